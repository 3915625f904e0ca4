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

#ifndef ANONCERT_BIGINT_HPP_
#define ANONCERT_BIGINT_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "anoncert/bytes.hpp"
#include "anoncert/error.hpp"

namespace anoncert {

// Fixed-width 256-bit unsigned integer. Limbs are little-endian 64-bit words.
class U256 {
 public:
  using Limbs = std::array<std::uint64_t, 4>;

  constexpr U256() = default;
  constexpr explicit U256(std::uint64_t v) : limbs_{v, 0, 0, 0} {}
  constexpr explicit U256(const Limbs& limbs) : limbs_(limbs) {}

  /// Up to 64 hex digits; shorter inputs are left-padded with zeros.
  static U256 from_hex(std::string_view hex) {
    if (hex.empty() || hex.size() > 64) {
      throw Error(ErrorCode::MalformedEncoding,
                  "hex integer must have 1..64 digits");
    }
    U256 out;
    for (char c : hex) {
      int v = detail::hex_value(c);
      if (v < 0) throw Error(ErrorCode::MalformedEncoding, "invalid hex digit");
      out = out.shl(4);
      out.limbs_[0] |= static_cast<std::uint64_t>(v);
    }
    return out;
  }

  /// Big-endian, at most 32 bytes.
  static U256 from_be_bytes(ByteView bytes) {
    if (bytes.size() > 32) {
      throw Error(ErrorCode::MalformedEncoding, "integer wider than 256 bits");
    }
    U256 out;
    for (std::size_t i = 0; i < bytes.size(); ++i) {
      std::size_t bit_pos = (bytes.size() - 1 - i) * 8;
      out.limbs_[bit_pos / 64] |= static_cast<std::uint64_t>(bytes[i])
                                  << (bit_pos % 64);
    }
    return out;
  }

  std::array<std::uint8_t, 32> to_be_bytes() const {
    std::array<std::uint8_t, 32> out{};
    for (std::size_t i = 0; i < 32; ++i) {
      std::size_t bit_pos = (31 - i) * 8;
      out[i] = static_cast<std::uint8_t>(limbs_[bit_pos / 64] >> (bit_pos % 64));
    }
    return out;
  }

  std::string to_hex() const { return hex_encode(to_be_bytes()); }

  constexpr const Limbs& limbs() const { return limbs_; }
  constexpr bool is_zero() const {
    return (limbs_[0] | limbs_[1] | limbs_[2] | limbs_[3]) == 0;
  }
  constexpr bool bit(unsigned i) const {
    return i < 256 && ((limbs_[i / 64] >> (i % 64)) & 1U) != 0;
  }
  constexpr unsigned bit_length() const {
    for (int w = 3; w >= 0; --w) {
      if (limbs_[w] != 0) {
        return static_cast<unsigned>(w) * 64 +
               (64 - static_cast<unsigned>(__builtin_clzll(limbs_[w])));
      }
    }
    return 0;
  }

  constexpr U256 shl(unsigned s) const {
    if (s >= 256) return U256();
    U256 out;
    unsigned words = s / 64, bits = s % 64;
    for (int i = 3; i >= static_cast<int>(words); --i) {
      std::uint64_t v = limbs_[i - words] << bits;
      if (bits != 0 && i - static_cast<int>(words) - 1 >= 0) {
        v |= limbs_[i - words - 1] >> (64 - bits);
      }
      out.limbs_[i] = v;
    }
    return out;
  }

  constexpr U256 shr(unsigned s) const {
    if (s >= 256) return U256();
    U256 out;
    unsigned words = s / 64, bits = s % 64;
    for (unsigned i = 0; i + words < 4; ++i) {
      std::uint64_t v = limbs_[i + words] >> bits;
      if (bits != 0 && i + words + 1 < 4) {
        v |= limbs_[i + words + 1] << (64 - bits);
      }
      out.limbs_[i] = v;
    }
    return out;
  }

  /// out = a + b, returns the carry out of bit 255.
  static constexpr std::uint64_t add(U256& out, const U256& a, const U256& b) {
    unsigned __int128 carry = 0;
    for (int i = 0; i < 4; ++i) {
      carry += static_cast<unsigned __int128>(a.limbs_[i]) + b.limbs_[i];
      out.limbs_[i] = static_cast<std::uint64_t>(carry);
      carry >>= 64;
    }
    return static_cast<std::uint64_t>(carry);
  }

  /// out = a - b, returns the borrow (1 when a < b).
  static constexpr std::uint64_t sub(U256& out, const U256& a, const U256& b) {
    std::uint64_t borrow = 0;
    for (int i = 0; i < 4; ++i) {
      std::uint64_t ai = a.limbs_[i], bi = b.limbs_[i];
      std::uint64_t d = ai - bi - borrow;
      borrow = (ai < bi || (ai == bi && borrow)) ? 1 : 0;
      out.limbs_[i] = d;
    }
    return borrow;
  }

  /// Swaps a and b when mask is all ones; mask must be 0 or ~0.
  static constexpr void cswap(U256& a, U256& b, std::uint64_t mask) {
    for (int i = 0; i < 4; ++i) {
      std::uint64_t t = mask & (a.limbs_[i] ^ b.limbs_[i]);
      a.limbs_[i] ^= t;
      b.limbs_[i] ^= t;
    }
  }

  friend constexpr bool operator==(const U256&, const U256&) = default;
  friend constexpr std::strong_ordering operator<=>(const U256& a,
                                                    const U256& b) {
    for (int i = 3; i >= 0; --i) {
      if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
    }
    return std::strong_ordering::equal;
  }

 private:
  Limbs limbs_{};
};

/// Arithmetic modulo an odd modulus m, 1 < m < 2^256, using Montgomery
/// multiplication with R = 2^256. Values passed to the public methods are
/// ordinary residues in [0, m); the Montgomery domain stays internal except
/// through the mont_* entry points used by the curve layer.
class Modulus {
 public:
  explicit Modulus(const U256& m) : m_(m) {
    if (!m.bit(0) || m <= U256(1)) {
      throw Error(ErrorCode::InvalidConfig, "modulus must be odd and > 1");
    }
    // -m^{-1} mod 2^64 by Newton iteration.
    std::uint64_t inv = 1;
    for (int i = 0; i < 7; ++i) inv *= 2 - m.limbs()[0] * inv;
    m_inv_neg_ = ~inv + 1;

    U256 r(1);
    for (int i = 0; i < 512; ++i) r = add(r, r);
    r2_ = r;
    one_mont_ = mont_mul(U256(1), r2_);
  }

  const U256& value() const { return m_; }
  unsigned bits() const { return m_.bit_length(); }

  U256 add(const U256& a, const U256& b) const {
    U256 s;
    std::uint64_t carry = U256::add(s, a, b);
    if (carry != 0 || s >= m_) U256::sub(s, s, m_);
    return s;
  }

  U256 sub(const U256& a, const U256& b) const {
    U256 d;
    if (U256::sub(d, a, b) != 0) U256::add(d, d, m_);
    return d;
  }

  U256 neg(const U256& a) const { return a.is_zero() ? a : sub(m_, a); }

  /// x mod m for any 256-bit x.
  U256 reduce(const U256& x) const { return from_mont(mont_mul(x, r2_)); }

  U256 mul(const U256& a, const U256& b) const {
    return mont_mul(mont_mul(a, b), r2_);
  }

  U256 pow(const U256& base, const U256& exp) const {
    U256 result = one_mont_;
    U256 b = to_mont(base);
    for (int i = static_cast<int>(exp.bit_length()) - 1; i >= 0; --i) {
      result = mont_mul(result, result);
      if (exp.bit(static_cast<unsigned>(i))) result = mont_mul(result, b);
    }
    return from_mont(result);
  }

  /// Inverse by Fermat's little theorem; the modulus must be prime.
  U256 inverse(const U256& a) const {
    if (a.is_zero()) {
      throw Error(ErrorCode::OutOfRange, "zero has no modular inverse");
    }
    U256 e;
    U256::sub(e, m_, U256(2));
    return pow(a, e);
  }

  // Montgomery-domain helpers.
  U256 to_mont(const U256& a) const { return mont_mul(a, r2_); }
  U256 from_mont(const U256& a) const { return mont_mul(a, U256(1)); }
  const U256& mont_one() const { return one_mont_; }

  /// a * b * R^{-1} mod m. Requires b < m; a may be any 256-bit value.
  U256 mont_mul(const U256& a, const U256& b) const {
    using u128 = unsigned __int128;
    const auto& al = a.limbs();
    const auto& bl = b.limbs();
    const auto& ml = m_.limbs();
    std::uint64_t t[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
      u128 c = 0;
      for (int j = 0; j < 4; ++j) {
        c += static_cast<u128>(al[j]) * bl[i] + t[j];
        t[j] = static_cast<std::uint64_t>(c);
        c >>= 64;
      }
      c += t[4];
      t[4] = static_cast<std::uint64_t>(c);
      t[5] = static_cast<std::uint64_t>(c >> 64);

      std::uint64_t q = t[0] * m_inv_neg_;
      c = static_cast<u128>(q) * ml[0] + t[0];
      c >>= 64;
      for (int j = 1; j < 4; ++j) {
        c += static_cast<u128>(q) * ml[j] + t[j];
        t[j - 1] = static_cast<std::uint64_t>(c);
        c >>= 64;
      }
      c += t[4];
      t[3] = static_cast<std::uint64_t>(c);
      t[4] = t[5] + static_cast<std::uint64_t>(c >> 64);
    }
    U256 r(U256::Limbs{t[0], t[1], t[2], t[3]});
    if (t[4] != 0 || r >= m_) U256::sub(r, r, m_);
    return r;
  }

 private:
  U256 m_;
  std::uint64_t m_inv_neg_ = 0;
  U256 r2_;
  U256 one_mont_;
};

}  // namespace anoncert

#endif  // ANONCERT_BIGINT_HPP_
