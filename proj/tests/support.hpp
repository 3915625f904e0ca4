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

// Independent reference routes for tests. Everything here goes through
// OpenSSL's own bignum, EC and ECDSA code, never through anoncert arithmetic.

#ifndef ANONCERT_TESTS_SUPPORT_HPP_
#define ANONCERT_TESTS_SUPPORT_HPP_

#include <openssl/bn.h>
#include <openssl/core_names.h>
#include <openssl/ec.h>
#include <openssl/evp.h>
#include <openssl/obj_mac.h>
#include <openssl/param_build.h>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "anoncert.hpp"

namespace testsupport {

using anoncert::Bytes;
using anoncert::CurveId;
using anoncert::Point;
using anoncert::U256;

struct BnFree {
  void operator()(BIGNUM* b) const { BN_free(b); }
};
struct BnCtxFree {
  void operator()(BN_CTX* c) const { BN_CTX_free(c); }
};
struct GroupFree {
  void operator()(EC_GROUP* g) const { EC_GROUP_free(g); }
};
struct EcPointFree {
  void operator()(EC_POINT* p) const { EC_POINT_free(p); }
};
struct PkeyFree {
  void operator()(EVP_PKEY* k) const { EVP_PKEY_free(k); }
};
struct MdCtxFree {
  void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};

using Bn = std::unique_ptr<BIGNUM, BnFree>;
using BnCtx = std::unique_ptr<BN_CTX, BnCtxFree>;
using Group = std::unique_ptr<EC_GROUP, GroupFree>;
using EcPoint = std::unique_ptr<EC_POINT, EcPointFree>;
using Pkey = std::unique_ptr<EVP_PKEY, PkeyFree>;
using MdCtx = std::unique_ptr<EVP_MD_CTX, MdCtxFree>;

inline void check(bool ok, const char* what) {
  if (!ok) throw std::runtime_error(std::string("openssl: ") + what);
}

inline Bn bn(const U256& v) {
  auto bytes = v.to_be_bytes();
  Bn out(BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), nullptr));
  check(out != nullptr, "BN_bin2bn");
  return out;
}

inline U256 from_bn(const BIGNUM* b) {
  std::array<std::uint8_t, 32> buf{};
  check(BN_bn2binpad(b, buf.data(), 32) == 32, "BN_bn2binpad");
  return U256::from_be_bytes(buf);
}

inline BnCtx bn_ctx() {
  BnCtx ctx(BN_CTX_new());
  check(ctx != nullptr, "BN_CTX_new");
  return ctx;
}

inline int nid(CurveId id) {
  switch (id) {
    case CurveId::brainpoolP256r1: return NID_brainpoolP256r1;
    case CurveId::secp256r1: return NID_X9_62_prime256v1;
    case CurveId::toy: break;
  }
  throw std::invalid_argument("no OpenSSL group for the toy curve");
}

inline const char* group_name(CurveId id) {
  return id == CurveId::brainpoolP256r1 ? "brainpoolP256r1" : "prime256v1";
}

inline Group group(CurveId id) {
  Group g(EC_GROUP_new_by_curve_name(nid(id)));
  check(g != nullptr, "EC_GROUP_new_by_curve_name");
  return g;
}

inline EcPoint to_ec(const EC_GROUP* g, const Point& p, BN_CTX* ctx) {
  EcPoint out(EC_POINT_new(g));
  check(out != nullptr, "EC_POINT_new");
  if (p.is_infinity()) {
    check(EC_POINT_set_to_infinity(g, out.get()) == 1, "set_to_infinity");
  } else {
    Bn x = bn(p.x());
    Bn y = bn(p.y());
    check(EC_POINT_set_affine_coordinates(g, out.get(), x.get(), y.get(), ctx) == 1,
          "set_affine_coordinates");
  }
  return out;
}

inline Point from_ec(CurveId id, const EC_GROUP* g, const EC_POINT* p, BN_CTX* ctx) {
  if (EC_POINT_is_at_infinity(g, p) == 1) return Point::infinity(id);
  Bn x(BN_new()), y(BN_new());
  check(EC_POINT_get_affine_coordinates(g, p, x.get(), y.get(), ctx) == 1,
        "get_affine_coordinates");
  return Point::unchecked(id, from_bn(x.get()), from_bn(y.get()));
}

/// k * G via OpenSSL.
inline Point ossl_mul_base(CurveId id, const U256& k) {
  Group g = group(id);
  BnCtx ctx = bn_ctx();
  EcPoint r(EC_POINT_new(g.get()));
  Bn kb = bn(k);
  check(EC_POINT_mul(g.get(), r.get(), kb.get(), nullptr, nullptr, ctx.get()) == 1,
        "EC_POINT_mul");
  return from_ec(id, g.get(), r.get(), ctx.get());
}

/// k * P via OpenSSL.
inline Point ossl_mul(CurveId id, const U256& k, const Point& p) {
  Group g = group(id);
  BnCtx ctx = bn_ctx();
  EcPoint in = to_ec(g.get(), p, ctx.get());
  EcPoint r(EC_POINT_new(g.get()));
  Bn kb = bn(k);
  check(EC_POINT_mul(g.get(), r.get(), nullptr, in.get(), kb.get(), ctx.get()) == 1,
        "EC_POINT_mul");
  return from_ec(id, g.get(), r.get(), ctx.get());
}

inline Point ossl_add(CurveId id, const Point& a, const Point& b) {
  Group g = group(id);
  BnCtx ctx = bn_ctx();
  EcPoint pa = to_ec(g.get(), a, ctx.get());
  EcPoint pb = to_ec(g.get(), b, ctx.get());
  EcPoint r(EC_POINT_new(g.get()));
  check(EC_POINT_add(g.get(), r.get(), pa.get(), pb.get(), ctx.get()) == 1,
        "EC_POINT_add");
  return from_ec(id, g.get(), r.get(), ctx.get());
}

/// Builds an EVP key from raw components. The private scalar is optional.
inline Pkey ossl_key(CurveId id, const Point& pub,
                     std::optional<U256> priv = std::nullopt) {
  Bytes encoded{0x04};
  auto xy = pub.to_bytes();
  encoded.insert(encoded.end(), xy.begin(), xy.end());
  OSSL_PARAM_BLD* bld = OSSL_PARAM_BLD_new();
  check(bld != nullptr, "OSSL_PARAM_BLD_new");
  OSSL_PARAM_BLD_push_utf8_string(bld, OSSL_PKEY_PARAM_GROUP_NAME, group_name(id), 0);
  OSSL_PARAM_BLD_push_octet_string(bld, OSSL_PKEY_PARAM_PUB_KEY, encoded.data(),
                                   encoded.size());
  Bn priv_bn;
  if (priv) {
    priv_bn = bn(*priv);
    OSSL_PARAM_BLD_push_BN(bld, OSSL_PKEY_PARAM_PRIV_KEY, priv_bn.get());
  }
  OSSL_PARAM* params = OSSL_PARAM_BLD_to_param(bld);
  EVP_PKEY_CTX* ctx = EVP_PKEY_CTX_new_from_name(nullptr, "EC", nullptr);
  EVP_PKEY* key = nullptr;
  bool ok = ctx != nullptr && EVP_PKEY_fromdata_init(ctx) == 1 &&
            EVP_PKEY_fromdata(ctx, &key,
                              priv ? EVP_PKEY_KEYPAIR : EVP_PKEY_PUBLIC_KEY,
                              params) == 1;
  EVP_PKEY_CTX_free(ctx);
  OSSL_PARAM_free(params);
  OSSL_PARAM_BLD_free(bld);
  check(ok, "EVP_PKEY_fromdata");
  return Pkey(key);
}

inline Bytes der_signature(const U256& r, const U256& s) {
  ECDSA_SIG* sig = ECDSA_SIG_new();
  check(sig != nullptr && ECDSA_SIG_set0(sig, bn(r).release(), bn(s).release()) == 1,
        "ECDSA_SIG_set0");
  int len = i2d_ECDSA_SIG(sig, nullptr);
  Bytes out(static_cast<std::size_t>(len));
  unsigned char* p = out.data();
  i2d_ECDSA_SIG(sig, &p);
  ECDSA_SIG_free(sig);
  return out;
}

/// ECDSA-SHA256 verification by OpenSSL.
inline bool ossl_verify(CurveId id, const Point& pub, const Bytes& message,
                        const U256& r, const U256& s) {
  Pkey key = ossl_key(id, pub);
  Bytes der = der_signature(r, s);
  MdCtx md(EVP_MD_CTX_new());
  check(EVP_DigestVerifyInit(md.get(), nullptr, EVP_sha256(), nullptr, key.get()) == 1,
        "DigestVerifyInit");
  return EVP_DigestVerify(md.get(), der.data(), der.size(), message.data(),
                          message.size()) == 1;
}

/// ECDSA-SHA256 signature by OpenSSL (random nonce). Returns (r, s).
inline std::pair<U256, U256> ossl_sign(CurveId id, const Point& pub, const U256& priv,
                                       const Bytes& message) {
  Pkey key = ossl_key(id, pub, priv);
  MdCtx md(EVP_MD_CTX_new());
  check(EVP_DigestSignInit(md.get(), nullptr, EVP_sha256(), nullptr, key.get()) == 1,
        "DigestSignInit");
  std::size_t len = 0;
  check(EVP_DigestSign(md.get(), nullptr, &len, message.data(), message.size()) == 1,
        "DigestSign size");
  Bytes der(len);
  check(EVP_DigestSign(md.get(), der.data(), &len, message.data(), message.size()) == 1,
        "DigestSign");
  const unsigned char* p = der.data();
  ECDSA_SIG* sig = d2i_ECDSA_SIG(nullptr, &p, static_cast<long>(len));
  check(sig != nullptr, "d2i_ECDSA_SIG");
  auto out = std::make_pair(from_bn(ECDSA_SIG_get0_r(sig)), from_bn(ECDSA_SIG_get0_s(sig)));
  ECDSA_SIG_free(sig);
  return out;
}

// Brute-force toy group y^2 = x^3 + 2x + 2 over GF(17) in plain ints, kept
// separate from the oracle shipped in the library.
namespace toy {

struct P {
  bool inf = true;
  int x = 0, y = 0;
  bool operator==(const P&) const = default;
};

inline int md(int v) { return ((v % 17) + 17) % 17; }

inline int inv(int v) {
  for (int c = 1; c < 17; ++c) {
    if (md(v * c) == 1) return c;
  }
  throw std::domain_error("no inverse");
}

inline P add(P a, P b) {
  if (a.inf) return b;
  if (b.inf) return a;
  if (a.x == b.x && md(a.y + b.y) == 0) return P{};
  int l = a.x == b.x ? md((3 * a.x * a.x + 2) * inv(2 * a.y))
                     : md((b.y - a.y) * inv(b.x - a.x));
  int x = md(l * l - a.x - b.x);
  return P{false, x, md(l * (a.x - x) - a.y)};
}

inline std::vector<P> points() {
  std::vector<P> out{P{}};
  for (int x = 0; x < 17; ++x) {
    for (int y = 0; y < 17; ++y) {
      if (md(y * y) == md(x * x * x + 2 * x + 2)) out.push_back(P{false, x, y});
    }
  }
  return out;
}

inline Point lift(const P& p) {
  if (p.inf) return Point::infinity(CurveId::toy);
  return Point::unchecked(CurveId::toy, U256(static_cast<std::uint64_t>(p.x)),
                          U256(static_cast<std::uint64_t>(p.y)));
}

}  // namespace toy

}  // namespace testsupport

#endif  // ANONCERT_TESTS_SUPPORT_HPP_
