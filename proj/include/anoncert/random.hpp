/*
 * Copyright 2026 The anoncert Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ANONCERT_RANDOM_HPP_
#define ANONCERT_RANDOM_HPP_

#include <openssl/rand.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "anoncert/bytes.hpp"
#include "anoncert/error.hpp"
#include "anoncert/hash.hpp"

namespace anoncert {

/// Source of uniform random bytes. Every randomized operation takes one
/// explicitly; nothing in the library reaches for a global generator.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  /// Throws Error(RngFailure) when no bytes can be produced.
  virtual void fill(std::span<std::uint8_t> out) = 0;
};

/// Operating-system entropy through OpenSSL's RAND_bytes.
class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override {
    if (out.empty()) return;
    if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
      throw Error(ErrorCode::RngFailure, "RAND_bytes failed");
    }
  }
};

/// Seeded SHA-256 counter-mode stream. split() derives an independent child
/// stream from a label, so per-actor and per-voter streams stay stable no
/// matter how the consumers are interleaved.
class DeterministicRandom final : public RandomSource {
 public:
  explicit DeterministicRandom(std::uint64_t seed,
                               std::string_view domain = "anoncert") {
    Bytes material = to_bytes(domain);
    material.push_back(0);
    for (int i = 7; i >= 0; --i) {
      material.push_back(static_cast<std::uint8_t>(seed >> (8 * i)));
    }
    key_ = sha256(material).bytes;
  }

  DeterministicRandom split(std::string_view label) const {
    Bytes material(key_.begin(), key_.end());
    const std::string_view tag = "split:";
    material.insert(material.end(), tag.begin(), tag.end());
    material.insert(material.end(), label.begin(), label.end());
    return DeterministicRandom(sha256(material).bytes);
  }

  void fill(std::span<std::uint8_t> out) override {
    for (std::uint8_t& b : out) {
      if (buffer_pos_ == buffer_.size()) refill();
      b = buffer_[buffer_pos_++];
    }
  }

 private:
  explicit DeterministicRandom(const std::array<std::uint8_t, 32>& key)
      : key_(key) {}

  void refill() {
    Bytes block(key_.begin(), key_.end());
    for (int i = 7; i >= 0; --i) {
      block.push_back(static_cast<std::uint8_t>(counter_ >> (8 * i)));
    }
    ++counter_;
    buffer_ = sha256(block).bytes;
    buffer_pos_ = 0;
  }

  std::array<std::uint8_t, 32> key_{};
  std::uint64_t counter_ = 0;
  std::array<std::uint8_t, 32> buffer_{};
  std::size_t buffer_pos_ = 32;
};

/// Serves a fixed byte prefix first, then defers to a fallback source (or
/// fails with RngFailure when there is none). Used to pin protocol draws
/// such as r_RA and r_CA to published values.
class ScriptedRandom final : public RandomSource {
 public:
  explicit ScriptedRandom(Bytes prefix, RandomSource* fallback = nullptr)
      : prefix_(std::move(prefix)), fallback_(fallback) {}

  void fill(std::span<std::uint8_t> out) override {
    std::size_t from_prefix =
        std::min(out.size(), prefix_.size() - consumed_);
    std::copy_n(prefix_.begin() + static_cast<std::ptrdiff_t>(consumed_),
                from_prefix, out.begin());
    consumed_ += from_prefix;
    if (from_prefix == out.size()) return;
    if (fallback_ == nullptr) {
      throw Error(ErrorCode::RngFailure, "scripted random bytes exhausted");
    }
    fallback_->fill(out.subspan(from_prefix));
  }

  std::size_t remaining() const { return prefix_.size() - consumed_; }

 private:
  Bytes prefix_;
  std::size_t consumed_ = 0;
  RandomSource* fallback_;
};

}  // namespace anoncert

#endif  // ANONCERT_RANDOM_HPP_
