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

#ifndef ANONCERT_ENVELOPE_HPP_
#define ANONCERT_ENVELOPE_HPP_

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <memory>
#include <string_view>

#include "anoncert/bytes.hpp"
#include "anoncert/curve.hpp"
#include "anoncert/error.hpp"
#include "anoncert/hash.hpp"
#include "anoncert/random.hpp"

namespace anoncert {

inline constexpr std::size_t kTagSize = 16;
inline constexpr std::size_t kNonceSize = 12;
inline constexpr std::string_view kEciesContext = "anoncert-ecies-v1";

using Tag = std::array<std::uint8_t, kTagSize>;
using Nonce = std::array<std::uint8_t, kNonceSize>;

/// ECIES output: ephemeral point (x || y) || body || 16-byte tag.
struct EciesCiphertext {
  Point ephemeral_public;
  Bytes body;
  Tag tag{};

  Bytes to_bytes() const {
    Bytes out;
    auto e = ephemeral_public.to_bytes();
    out.insert(out.end(), e.begin(), e.end());
    out.insert(out.end(), body.begin(), body.end());
    out.insert(out.end(), tag.begin(), tag.end());
    return out;
  }

  /// The ephemeral point is not validated here; ecies_decrypt does that.
  static EciesCiphertext from_bytes(CurveId curve, ByteView bytes) {
    if (bytes.size() < 64 + kTagSize) {
      throw Error(ErrorCode::MalformedEncoding, "ECIES ciphertext too short");
    }
    EciesCiphertext ct{
        Point::unchecked(curve, U256::from_be_bytes(bytes.subspan(0, 32)),
                         U256::from_be_bytes(bytes.subspan(32, 32))),
        Bytes(bytes.begin() + 64, bytes.end() - kTagSize),
        {}};
    std::copy(bytes.end() - kTagSize, bytes.end(), ct.tag.begin());
    return ct;
  }

  friend bool operator==(const EciesCiphertext&, const EciesCiphertext&) = default;
};

/// AES-256 key (the end entity's s).
class SymmetricKey {
 public:
  static SymmetricKey generate(RandomSource& rng) {
    SymmetricKey k;
    rng.fill(k.key_);
    return k;
  }
  static SymmetricKey from_bytes(ByteView bytes) {
    if (bytes.size() != 32) {
      throw Error(ErrorCode::InvalidKey, "AES-256 key must be 32 bytes");
    }
    SymmetricKey k;
    std::copy(bytes.begin(), bytes.end(), k.key_.begin());
    return k;
  }

  const std::array<std::uint8_t, 32>& bytes() const { return key_; }

  friend bool operator==(const SymmetricKey&, const SymmetricKey&) = default;

 private:
  SymmetricKey() = default;
  std::array<std::uint8_t, 32> key_{};
};

/// AES-256-GCM output: 12-byte nonce || body || 16-byte tag.
struct SymmetricCiphertext {
  Nonce nonce{};
  Bytes body;
  Tag tag{};

  Bytes to_bytes() const {
    Bytes out(nonce.begin(), nonce.end());
    out.insert(out.end(), body.begin(), body.end());
    out.insert(out.end(), tag.begin(), tag.end());
    return out;
  }

  static SymmetricCiphertext from_bytes(ByteView bytes) {
    if (bytes.size() < kNonceSize + kTagSize) {
      throw Error(ErrorCode::MalformedEncoding, "AES-GCM ciphertext too short");
    }
    SymmetricCiphertext ct;
    std::copy_n(bytes.begin(), kNonceSize, ct.nonce.begin());
    ct.body.assign(bytes.begin() + kNonceSize, bytes.end() - kTagSize);
    std::copy(bytes.end() - kTagSize, bytes.end(), ct.tag.begin());
    return ct;
  }

  friend bool operator==(const SymmetricCiphertext&,
                         const SymmetricCiphertext&) = default;
};

/// ECDSA (r, s). Encoded as 64 bytes r || s.
struct Signature {
  Scalar r;
  Scalar s;

  std::array<std::uint8_t, 64> to_bytes() const {
    std::array<std::uint8_t, 64> out{};
    auto rb = r.to_bytes();
    auto sb = s.to_bytes();
    std::copy(rb.begin(), rb.end(), out.begin());
    std::copy(sb.begin(), sb.end(), out.begin() + 32);
    return out;
  }

  static Signature from_bytes(const CurveParams& params, ByteView bytes) {
    if (bytes.size() != 64) {
      throw Error(ErrorCode::MalformedEncoding, "signature must be 64 bytes");
    }
    try {
      return Signature{Scalar::from_bytes(params, bytes.subspan(0, 32)),
                       Scalar::from_bytes(params, bytes.subspan(32, 32))};
    } catch (const Error&) {
      throw Error(ErrorCode::MalformedEncoding,
                  "signature component not below the group order");
    }
  }

  friend bool operator==(const Signature&, const Signature&) = default;
};

inline Digest digest(ByteView message) { return sha256(message); }

namespace detail {

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

inline Bytes aes_gcm_seal(ByteView key, const Nonce& nonce, ByteView plaintext,
                          ByteView aad, Tag& tag_out) {
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  Bytes out(plaintext.size());
  int len = 0;
  bool ok = ctx &&
            EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr,
                               nullptr) == 1 &&
            EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN,
                                static_cast<int>(kNonceSize), nullptr) == 1 &&
            EVP_EncryptInit_ex(ctx.get(), nullptr, nullptr, key.data(),
                               nonce.data()) == 1;
  if (ok && !aad.empty()) {
    ok = EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                           static_cast<int>(aad.size())) == 1;
  }
  if (ok && !plaintext.empty()) {
    ok = EVP_EncryptUpdate(ctx.get(), out.data(), &len, plaintext.data(),
                           static_cast<int>(plaintext.size())) == 1;
  }
  ok = ok && EVP_EncryptFinal_ex(ctx.get(), out.data() + out.size(), &len) == 1 &&
       EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG,
                           static_cast<int>(kTagSize), tag_out.data()) == 1;
  if (!ok) throw Error(ErrorCode::CryptoBackend, "AES-256-GCM encryption failed");
  return out;
}

inline Bytes aes_gcm_open(ByteView key, const Nonce& nonce, ByteView body,
                          ByteView aad, const Tag& tag) {
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  Bytes out(body.size());
  int len = 0;
  Tag tag_copy = tag;
  bool ok = ctx &&
            EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr,
                               nullptr) == 1 &&
            EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN,
                                static_cast<int>(kNonceSize), nullptr) == 1 &&
            EVP_DecryptInit_ex(ctx.get(), nullptr, nullptr, key.data(),
                               nonce.data()) == 1;
  if (!ok) throw Error(ErrorCode::CryptoBackend, "AES-256-GCM setup failed");
  if (!aad.empty() && EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                                        static_cast<int>(aad.size())) != 1) {
    throw Error(ErrorCode::CryptoBackend, "AES-256-GCM aad update failed");
  }
  if (!body.empty() &&
      EVP_DecryptUpdate(ctx.get(), out.data(), &len, body.data(),
                        static_cast<int>(body.size())) != 1) {
    throw Error(ErrorCode::CryptoBackend, "AES-256-GCM update failed");
  }
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG,
                          static_cast<int>(kTagSize), tag_copy.data()) != 1) {
    throw Error(ErrorCode::CryptoBackend, "AES-256-GCM tag setup failed");
  }
  if (EVP_DecryptFinal_ex(ctx.get(), out.data() + out.size(), &len) != 1) {
    throw Error(ErrorCode::AuthenticationFailure, "AES-256-GCM tag mismatch");
  }
  return out;
}

// Shared point x-coordinate -> AES key; the ephemeral point is the salt so
// the derived key is bound to the exact envelope.
inline Bytes ecies_key(const Point& shared, const Point& ephemeral) {
  auto ikm = shared.x().to_be_bytes();
  auto salt = ephemeral.to_bytes();
  return hkdf_sha256(ikm, salt, to_bytes(kEciesContext), 32);
}

}  // namespace detail

inline EciesCiphertext ecies_encrypt(const Point& recipient_public,
                                     ByteView plaintext,
                                     const CurveParams& params,
                                     RandomSource& rng) {
  if (recipient_public.curve() != params.id() ||
      recipient_public.is_infinity() || !is_on_curve(recipient_public, params)) {
    throw Error(ErrorCode::InvalidRecipientKey,
                "recipient key must be a finite point on the curve");
  }
  KeyPair eph = generate_keypair(params, rng);
  Point shared = scalar_mul(eph.private_key, recipient_public, params);
  if (shared.is_infinity()) {
    throw Error(ErrorCode::InvalidRecipientKey, "shared point is infinity");
  }
  Bytes key = detail::ecies_key(shared, eph.public_key);
  EciesCiphertext ct{eph.public_key, {}, {}};
  // Each derived key encrypts exactly one message, so a zero nonce is safe.
  ct.body = detail::aes_gcm_seal(key, Nonce{}, plaintext, {}, ct.tag);
  return ct;
}

inline Bytes ecies_decrypt(const Scalar& recipient_private,
                           const EciesCiphertext& ct,
                           const CurveParams& params) {
  detail::require_curve(recipient_private.curve(), params, "private key");
  if (ct.ephemeral_public.curve() != params.id() ||
      ct.ephemeral_public.is_infinity() ||
      !is_on_curve(ct.ephemeral_public, params)) {
    throw Error(ErrorCode::InvalidEphemeralKey,
                "ephemeral key must be a finite point on the curve");
  }
  Point shared = scalar_mul(recipient_private, ct.ephemeral_public, params);
  if (shared.is_infinity()) {
    throw Error(ErrorCode::InvalidEphemeralKey, "shared point is infinity");
  }
  Bytes key = detail::ecies_key(shared, ct.ephemeral_public);
  return detail::aes_gcm_open(key, Nonce{}, ct.body, {}, ct.tag);
}

inline SymmetricCiphertext sym_encrypt(const SymmetricKey& key,
                                       ByteView plaintext, ByteView aad,
                                       RandomSource& rng) {
  SymmetricCiphertext ct;
  rng.fill(ct.nonce);
  ct.body = detail::aes_gcm_seal(key.bytes(), ct.nonce, plaintext, aad, ct.tag);
  return ct;
}

inline Bytes sym_decrypt(const SymmetricKey& key, const SymmetricCiphertext& ct,
                         ByteView aad) {
  return detail::aes_gcm_open(key.bytes(), ct.nonce, ct.body, aad, ct.tag);
}

namespace detail {

// Leftmost bits(n) bits of the input as an integer (RFC 6979, 2.3.2).
inline U256 bits2int(ByteView data, const CurveParams& params) {
  const unsigned qlen = params.n().bit_length();
  std::size_t take = std::min<std::size_t>(data.size(), 32);
  U256 v = U256::from_be_bytes(data.subspan(0, take));
  std::size_t vlen = take * 8;
  return vlen > qlen ? v.shr(static_cast<unsigned>(vlen - qlen)) : v;
}

// rlen-byte big-endian encoding (RFC 6979, 2.3.3).
inline Bytes int2octets(const U256& v, const CurveParams& params) {
  const std::size_t rlen = (params.n().bit_length() + 7) / 8;
  auto full = v.to_be_bytes();
  return Bytes(full.end() - static_cast<std::ptrdiff_t>(rlen), full.end());
}

/// RFC 6979 HMAC-SHA256 nonce stream for one (key, message hash) pair.
class Rfc6979Nonces {
 public:
  Rfc6979Nonces(const Scalar& x, const Digest& h1, const CurveParams& params)
      : params_(params) {
    v_.fill(0x01);
    k_.fill(0x00);
    Bytes seed = int2octets(x.value(), params);
    Bytes h_oct = int2octets(params.order().reduce(bits2int(h1.bytes, params)),
                             params);
    seed.insert(seed.end(), h_oct.begin(), h_oct.end());
    step(0x00, seed);
    step(0x01, seed);
  }

  U256 next() {
    const unsigned qlen = params_.n().bit_length();
    while (true) {
      Bytes t;
      while (t.size() * 8 < qlen) {
        v_ = hmac_sha256(k_, v_);
        t.insert(t.end(), v_.begin(), v_.end());
      }
      U256 k = bits2int(t, params_);
      reseed();
      if (!k.is_zero() && k < params_.n()) return k;
    }
  }

 private:
  void step(std::uint8_t tag, const Bytes& seed) {
    Bytes m(v_.begin(), v_.end());
    m.push_back(tag);
    m.insert(m.end(), seed.begin(), seed.end());
    k_ = hmac_sha256(k_, m);
    v_ = hmac_sha256(k_, v_);
  }

  // Prepare the state for a further candidate (RFC 6979, 3.2 step h.3).
  void reseed() {
    Bytes m(v_.begin(), v_.end());
    m.push_back(0x00);
    k_ = hmac_sha256(k_, m);
    v_ = hmac_sha256(k_, v_);
  }

  const CurveParams& params_;
  std::array<std::uint8_t, 32> v_{};
  std::array<std::uint8_t, 32> k_{};
};

}  // namespace detail

/// ECDSA over SHA-256 with RFC 6979 deterministic nonces.
inline Signature sign(const Scalar& signer_private, ByteView message,
                      const CurveParams& params) {
  detail::require_curve(signer_private.curve(), params, "signing key");
  if (signer_private.is_zero()) {
    throw Error(ErrorCode::InvalidKey, "signing key must be in [1, n-1]");
  }
  const Modulus& order = params.order();
  Digest h = sha256(message);
  U256 e = order.reduce(detail::bits2int(h.bytes, params));
  detail::Rfc6979Nonces nonces(signer_private, h, params);
  while (true) {
    U256 k = nonces.next();
    Point kg = scalar_mul(k, params.generator(), params);
    U256 r = order.reduce(kg.x());
    if (r.is_zero()) continue;
    U256 s = order.mul(order.inverse(k),
                       order.add(e, order.mul(r, signer_private.value())));
    if (s.is_zero()) continue;
    return Signature{Scalar(params, r), Scalar(params, s)};
  }
}

inline bool verify(const Point& signer_public, ByteView message,
                   const Signature& sig, const CurveParams& params) {
  if (signer_public.curve() != params.id() || signer_public.is_infinity() ||
      !is_on_curve(signer_public, params) || sig.r.curve() != params.id() ||
      sig.s.curve() != params.id() || sig.r.is_zero() || sig.s.is_zero()) {
    return false;
  }
  const Modulus& order = params.order();
  U256 e = order.reduce(detail::bits2int(sha256(message).bytes, params));
  U256 w = order.inverse(sig.s.value());
  U256 u1 = order.mul(e, w);
  U256 u2 = order.mul(sig.r.value(), w);
  Point sum = point_add(scalar_mul(u1, params.generator(), params),
                        scalar_mul(u2, signer_public, params), params);
  if (sum.is_infinity()) return false;
  return order.reduce(sum.x()) == sig.r.value();
}

}  // namespace anoncert

#endif  // ANONCERT_ENVELOPE_HPP_
