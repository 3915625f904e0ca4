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

#ifndef ANONCERT_HASH_HPP_
#define ANONCERT_HASH_HPP_

#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/kdf.h>

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>

#include "anoncert/bytes.hpp"
#include "anoncert/error.hpp"

namespace anoncert {

/// SHA-256 output. Ordered so it can key the RA's correlation table.
struct Digest {
  std::array<std::uint8_t, 32> bytes{};

  std::string to_hex() const { return hex_encode(bytes); }
  static Digest from_hex(std::string_view hex) {
    Bytes raw = hex_decode(hex);
    if (raw.size() != 32) {
      throw Error(ErrorCode::MalformedEncoding, "digest must be 32 bytes");
    }
    Digest d;
    std::copy(raw.begin(), raw.end(), d.bytes.begin());
    return d;
  }

  friend auto operator<=>(const Digest&, const Digest&) = default;
};

inline Digest sha256(ByteView data) {
  Digest out;
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.bytes.data(), &len, EVP_sha256(),
                 nullptr) != 1 ||
      len != out.bytes.size()) {
    throw Error(ErrorCode::CryptoBackend, "SHA-256 failed");
  }
  return out;
}

inline std::array<std::uint8_t, 32> hmac_sha256(ByteView key, ByteView data) {
  std::array<std::uint8_t, 32> out{};
  unsigned int len = 0;
  if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(),
           data.size(), out.data(), &len) == nullptr ||
      len != out.size()) {
    throw Error(ErrorCode::CryptoBackend, "HMAC-SHA256 failed");
  }
  return out;
}

/// RFC 5869 HKDF with SHA-256.
inline Bytes hkdf_sha256(ByteView ikm, ByteView salt, ByteView info,
                         std::size_t length) {
  std::unique_ptr<EVP_PKEY_CTX, decltype(&EVP_PKEY_CTX_free)> ctx(
      EVP_PKEY_CTX_new_id(EVP_PKEY_HKDF, nullptr), &EVP_PKEY_CTX_free);
  Bytes out(length);
  std::size_t out_len = length;
  // OpenSSL rejects a null salt pointer even with zero length.
  static const std::uint8_t kEmpty = 0;
  if (!ctx || EVP_PKEY_derive_init(ctx.get()) <= 0 ||
      EVP_PKEY_CTX_set_hkdf_md(ctx.get(), EVP_sha256()) <= 0 ||
      EVP_PKEY_CTX_set1_hkdf_salt(ctx.get(), salt.empty() ? &kEmpty : salt.data(),
                                  static_cast<int>(salt.size())) <= 0 ||
      EVP_PKEY_CTX_set1_hkdf_key(ctx.get(), ikm.data(),
                                 static_cast<int>(ikm.size())) <= 0 ||
      EVP_PKEY_CTX_add1_hkdf_info(ctx.get(), info.data(),
                                  static_cast<int>(info.size())) <= 0 ||
      EVP_PKEY_derive(ctx.get(), out.data(), &out_len) <= 0 ||
      out_len != length) {
    throw Error(ErrorCode::CryptoBackend, "HKDF-SHA256 failed");
  }
  return out;
}

}  // namespace anoncert

#endif  // ANONCERT_HASH_HPP_
