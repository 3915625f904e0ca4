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

#ifndef ANONCERT_CURVE_HPP_
#define ANONCERT_CURVE_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "anoncert/bigint.hpp"
#include "anoncert/bytes.hpp"
#include "anoncert/error.hpp"
#include "anoncert/random.hpp"

namespace anoncert {

enum class CurveId : std::uint8_t {
  brainpoolP256r1 = 1,
  secp256r1 = 2,
  // y^2 = x^3 + 2x + 2 over GF(17), order 19. Exhaustively testable.
  toy = 3,
};

constexpr std::string_view to_string(CurveId id) {
  switch (id) {
    case CurveId::brainpoolP256r1: return "brainpoolP256r1";
    case CurveId::secp256r1: return "secp256r1";
    case CurveId::toy: return "toy";
  }
  return "unknown";
}

inline CurveId parse_curve_id(std::string_view name) {
  for (CurveId id : {CurveId::brainpoolP256r1, CurveId::secp256r1,
                     CurveId::toy}) {
    if (name == to_string(id)) return id;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown curve: " + std::string(name));
}

inline CurveId curve_id_from_byte(std::uint8_t b) {
  if (b < 1 || b > 3) {
    throw Error(ErrorCode::MalformedEncoding, "unknown curve id byte");
  }
  return static_cast<CurveId>(b);
}

class Point;

/// Short-Weierstrass domain parameters y^2 = x^3 + a x + b over GF(p) with a
/// base point G of prime order n and cofactor h. Construction precomputes the
/// Montgomery contexts for p and n.
class CurveParams {
 public:
  CurveParams(CurveId id, const U256& p, const U256& a, const U256& b,
              const U256& gx, const U256& gy, const U256& n, std::uint32_t h)
      : id_(id),
        p_(p),
        a_(a),
        b_(b),
        gx_(gx),
        gy_(gy),
        n_(n),
        h_(h),
        field_(p),
        order_(n),
        a_mont_(field_.to_mont(a)),
        b_mont_(field_.to_mont(b)) {}

  CurveId id() const { return id_; }
  std::string_view name() const { return to_string(id_); }
  const U256& p() const { return p_; }
  const U256& a() const { return a_; }
  const U256& b() const { return b_; }
  const U256& gx() const { return gx_; }
  const U256& gy() const { return gy_; }
  const U256& n() const { return n_; }
  std::uint32_t h() const { return h_; }

  const Modulus& field() const { return field_; }
  const Modulus& order() const { return order_; }
  const U256& a_mont() const { return a_mont_; }
  const U256& b_mont() const { return b_mont_; }

  inline Point generator() const;

 private:
  CurveId id_;
  U256 p_, a_, b_, gx_, gy_, n_;
  std::uint32_t h_;
  Modulus field_;
  Modulus order_;
  U256 a_mont_, b_mont_;
};

inline const CurveParams& curve_params(CurveId id) {
  static const CurveParams kBrainpool(
      CurveId::brainpoolP256r1,
      U256::from_hex("A9FB57DBA1EEA9BC3E660A909D838D726E3BF623D52620282013481D1F6E5377"),
      U256::from_hex("7D5A0975FC2C3057EEF67530417AFFE7FB8055C126DC5C6CE94A4B44F330B5D9"),
      U256::from_hex("26DC5C6CE94A4B44F330B5D9BBD77CBF958416295CF7E1CE6BCCDC18FF8C07B6"),
      U256::from_hex("8BD2AEB9CB7E57CB2C4B482FFC81B7AFB9DE27E1E3BD23C23A4453BD9ACE3262"),
      U256::from_hex("547EF835C3DAC4FD97F8461A14611DC9C27745132DED8E545C1D54C72F046997"),
      U256::from_hex("A9FB57DBA1EEA9BC3E660A909D838D718C397AA3B561A6F7901E0E82974856A7"),
      1);
  static const CurveParams kSecp256r1(
      CurveId::secp256r1,
      U256::from_hex("FFFFFFFF00000001000000000000000000000000FFFFFFFFFFFFFFFFFFFFFFFF"),
      U256::from_hex("FFFFFFFF00000001000000000000000000000000FFFFFFFFFFFFFFFFFFFFFFFC"),
      U256::from_hex("5AC635D8AA3A93E7B3EBBD55769886BC651D06B0CC53B0F63BCE3C3E27D2604B"),
      U256::from_hex("6B17D1F2E12C4247F8BCE6E563A440F277037D812DEB33A0F4A13945D898C296"),
      U256::from_hex("4FE342E2FE1A7F9B8EE7EB4A7C0F9E162BCE33576B315ECECBB6406837BF51F5"),
      U256::from_hex("FFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551"),
      1);
  static const CurveParams kToy(CurveId::toy, U256(17), U256(2), U256(2),
                                U256(5), U256(1), U256(19), 1);
  switch (id) {
    case CurveId::brainpoolP256r1: return kBrainpool;
    case CurveId::secp256r1: return kSecp256r1;
    case CurveId::toy: return kToy;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown curve id");
}

/// Integer modulo n, tagged with its curve.
class Scalar {
 public:
  Scalar(const CurveParams& params, const U256& value)
      : curve_(params.id()), value_(value) {
    if (value >= params.n()) {
      throw Error(ErrorCode::OutOfRange, "scalar not below the group order");
    }
  }

  static Scalar zero(const CurveParams& params) { return Scalar(params, U256()); }
  static Scalar from_hex(const CurveParams& params, std::string_view hex) {
    return Scalar(params, U256::from_hex(hex));
  }
  static Scalar from_bytes(const CurveParams& params, ByteView bytes) {
    if (bytes.size() != 32) {
      throw Error(ErrorCode::MalformedEncoding, "scalar must be 32 bytes");
    }
    return Scalar(params, U256::from_be_bytes(bytes));
  }

  CurveId curve() const { return curve_; }
  const U256& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }
  std::array<std::uint8_t, 32> to_bytes() const { return value_.to_be_bytes(); }
  std::string to_hex() const { return value_.to_hex(); }

  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  CurveId curve_;
  U256 value_;
};

/// Affine point or the point at infinity, tagged with its curve. Instances
/// built through from_affine() are guaranteed on the curve; unchecked() exists
/// for decoders that defer validation to the operation consuming the point.
class Point {
 public:
  static Point infinity(CurveId curve) { return Point(curve, true, {}, {}); }
  static inline Point from_affine(const CurveParams& params, const U256& x,
                                  const U256& y);
  static Point unchecked(CurveId curve, const U256& x, const U256& y) {
    return Point(curve, false, x, y);
  }

  CurveId curve() const { return curve_; }
  bool is_infinity() const { return infinity_; }
  const U256& x() const { return x_; }
  const U256& y() const { return y_; }

  /// x || y, 32 bytes each, big-endian. Infinity has no byte form.
  std::array<std::uint8_t, 64> to_bytes() const {
    if (infinity_) {
      throw Error(ErrorCode::InvalidKey, "point at infinity has no encoding");
    }
    std::array<std::uint8_t, 64> out{};
    auto xb = x_.to_be_bytes();
    auto yb = y_.to_be_bytes();
    std::copy(xb.begin(), xb.end(), out.begin());
    std::copy(yb.begin(), yb.end(), out.begin() + 32);
    return out;
  }

  /// "INF" or "<64 hex x>,<64 hex y>".
  std::string to_hex() const {
    if (infinity_) return "INF";
    return x_.to_hex() + "," + y_.to_hex();
  }

  static inline Point from_hex(const CurveParams& params, std::string_view text);

  friend bool operator==(const Point& a, const Point& b) {
    if (a.curve_ != b.curve_ || a.infinity_ != b.infinity_) return false;
    return a.infinity_ || (a.x_ == b.x_ && a.y_ == b.y_);
  }

 private:
  Point(CurveId curve, bool infinity, const U256& x, const U256& y)
      : curve_(curve), infinity_(infinity), x_(x), y_(y) {}

  CurveId curve_;
  bool infinity_;
  U256 x_, y_;
};

struct KeyPair {
  Scalar private_key;
  Point public_key;

  friend bool operator==(const KeyPair&, const KeyPair&) = default;
};

inline bool is_on_curve(const Point& pt, const CurveParams& params) {
  if (pt.curve() != params.id()) return false;
  if (pt.is_infinity()) return true;
  if (pt.x() >= params.p() || pt.y() >= params.p()) return false;
  const Modulus& f = params.field();
  U256 lhs = f.mul(pt.y(), pt.y());
  U256 rhs = f.add(f.mul(f.mul(pt.x(), pt.x()), pt.x()),
                   f.add(f.mul(params.a(), pt.x()), params.b()));
  return lhs == rhs;
}

Point Point::from_affine(const CurveParams& params, const U256& x,
                         const U256& y) {
  Point pt(params.id(), false, x, y);
  if (!is_on_curve(pt, params)) {
    throw Error(ErrorCode::NotOnCurve, "affine point fails the curve equation");
  }
  return pt;
}

Point Point::from_hex(const CurveParams& params, std::string_view text) {
  if (text == "INF") return infinity(params.id());
  auto sep = text.find_first_of(", ");
  if (sep == std::string_view::npos) {
    throw Error(ErrorCode::MalformedEncoding, "point text must be INF or X,Y");
  }
  return from_affine(params, U256::from_hex(text.substr(0, sep)),
                     U256::from_hex(text.substr(sep + 1)));
}

Point CurveParams::generator() const {
  return Point::from_affine(*this, gx_, gy_);
}

inline Point negate(const Point& pt, const CurveParams& params) {
  if (pt.is_infinity()) return pt;
  return Point::unchecked(pt.curve(), pt.x(), params.field().neg(pt.y()));
}

namespace detail {

// Jacobian coordinates (X/Z^2, Y/Z^3) in the Montgomery domain; Z = 0 is the
// point at infinity.
struct Jacobian {
  U256 x, y, z;
};

inline Jacobian to_jacobian(const Point& pt, const CurveParams& params) {
  const Modulus& f = params.field();
  if (pt.is_infinity()) return {f.mont_one(), f.mont_one(), U256()};
  return {f.to_mont(pt.x()), f.to_mont(pt.y()), f.mont_one()};
}

inline Point to_affine(const Jacobian& j, const CurveParams& params) {
  if (j.z.is_zero()) return Point::infinity(params.id());
  const Modulus& f = params.field();
  U256 zinv = f.to_mont(f.inverse(f.from_mont(j.z)));
  U256 zinv2 = f.mont_mul(zinv, zinv);
  U256 x = f.from_mont(f.mont_mul(j.x, zinv2));
  U256 y = f.from_mont(f.mont_mul(j.y, f.mont_mul(zinv2, zinv)));
  return Point::unchecked(params.id(), x, y);
}

// dbl-2007-bl, general a.
inline Jacobian dbl(const Jacobian& p, const CurveParams& params) {
  if (p.z.is_zero()) return p;
  const Modulus& f = params.field();
  auto mul = [&](const U256& a, const U256& b) { return f.mont_mul(a, b); };
  U256 xx = mul(p.x, p.x);
  U256 yy = mul(p.y, p.y);
  U256 yyyy = mul(yy, yy);
  U256 zz = mul(p.z, p.z);
  U256 t = f.add(p.x, yy);
  U256 s = f.sub(f.sub(mul(t, t), xx), yyyy);
  s = f.add(s, s);
  U256 m = f.add(f.add(xx, xx), xx);
  m = f.add(m, mul(params.a_mont(), mul(zz, zz)));
  U256 x3 = f.sub(f.sub(mul(m, m), s), s);
  U256 y8 = f.add(yyyy, yyyy);
  y8 = f.add(y8, y8);
  y8 = f.add(y8, y8);
  U256 y3 = f.sub(mul(m, f.sub(s, x3)), y8);
  U256 yz = f.add(p.y, p.z);
  U256 z3 = f.sub(f.sub(mul(yz, yz), yy), zz);
  return {x3, y3, z3};
}

// add-2007-bl with the exceptional cases handled explicitly.
inline Jacobian add(const Jacobian& p, const Jacobian& q,
                    const CurveParams& params) {
  if (p.z.is_zero()) return q;
  if (q.z.is_zero()) return p;
  const Modulus& f = params.field();
  auto mul = [&](const U256& a, const U256& b) { return f.mont_mul(a, b); };
  U256 z1z1 = mul(p.z, p.z);
  U256 z2z2 = mul(q.z, q.z);
  U256 u1 = mul(p.x, z2z2);
  U256 u2 = mul(q.x, z1z1);
  U256 s1 = mul(mul(p.y, q.z), z2z2);
  U256 s2 = mul(mul(q.y, p.z), z1z1);
  U256 h = f.sub(u2, u1);
  U256 r = f.sub(s2, s1);
  if (h.is_zero()) {
    if (r.is_zero()) return dbl(p, params);
    return {f.mont_one(), f.mont_one(), U256()};
  }
  r = f.add(r, r);
  U256 h2 = f.add(h, h);
  U256 i = mul(h2, h2);
  U256 j = mul(h, i);
  U256 v = mul(u1, i);
  U256 x3 = f.sub(f.sub(f.sub(mul(r, r), j), v), v);
  U256 s1j = mul(s1, j);
  U256 y3 = f.sub(mul(r, f.sub(v, x3)), f.add(s1j, s1j));
  U256 zs = f.add(p.z, q.z);
  U256 z3 = mul(f.sub(f.sub(mul(zs, zs), z1z1), z2z2), h);
  return {x3, y3, z3};
}

inline void cswap(Jacobian& a, Jacobian& b, std::uint64_t bit) {
  std::uint64_t mask = ~bit + 1;
  U256::cswap(a.x, b.x, mask);
  U256::cswap(a.y, b.y, mask);
  U256::cswap(a.z, b.z, mask);
}

// Montgomery ladder over all 256 bits of k. The schedule is fixed, but the
// field operations underneath are not audited for constant time.
inline Jacobian ladder(const U256& k, const Jacobian& p,
                       const CurveParams& params) {
  const Modulus& f = params.field();
  Jacobian r0{f.mont_one(), f.mont_one(), U256()};
  Jacobian r1 = p;
  for (int i = 255; i >= 0; --i) {
    std::uint64_t bit = k.bit(static_cast<unsigned>(i)) ? 1 : 0;
    cswap(r0, r1, bit);
    r1 = add(r0, r1, params);
    r0 = dbl(r0, params);
    cswap(r0, r1, bit);
  }
  return r0;
}

inline void require_curve(CurveId got, const CurveParams& params,
                          const char* what) {
  if (got != params.id()) {
    throw Error(ErrorCode::CurveMismatch,
                std::string(what) + " belongs to " + std::string(to_string(got)) +
                    ", expected " + std::string(params.name()));
  }
}

inline void require_on_curve(const Point& pt, const CurveParams& params,
                             const char* what) {
  require_curve(pt.curve(), params, what);
  if (!is_on_curve(pt, params)) {
    throw Error(ErrorCode::NotOnCurve, std::string(what) + " is not on the curve");
  }
}

}  // namespace detail

inline Point point_add(const Point& p, const Point& q,
                       const CurveParams& params) {
  detail::require_on_curve(p, params, "left operand");
  detail::require_on_curve(q, params, "right operand");
  return detail::to_affine(detail::add(detail::to_jacobian(p, params),
                                       detail::to_jacobian(q, params), params),
                           params);
}

/// k * P for any 256-bit multiplier, including multiples of n.
inline Point scalar_mul(const U256& k, const Point& pt,
                        const CurveParams& params) {
  detail::require_on_curve(pt, params, "point");
  return detail::to_affine(
      detail::ladder(k, detail::to_jacobian(pt, params), params), params);
}

inline Point scalar_mul(const Scalar& k, const Point& pt,
                        const CurveParams& params) {
  detail::require_curve(k.curve(), params, "scalar");
  return scalar_mul(k.value(), pt, params);
}

inline Scalar scalar_add_mod_n(const Scalar& x, const Scalar& r,
                               const CurveParams& params) {
  detail::require_curve(x.curve(), params, "scalar");
  detail::require_curve(r.curve(), params, "scalar");
  return Scalar(params, params.order().add(x.value(), r.value()));
}

/// Uniform draw from [1, n-1]: read ceil(bits(n)/8) bytes, mask to bits(n)
/// bits, reject out-of-range values.
inline Scalar random_scalar(const CurveParams& params, RandomSource& rng) {
  const unsigned bits = params.n().bit_length();
  const std::size_t nbytes = (bits + 7) / 8;
  std::array<std::uint8_t, 32> buf{};
  for (int attempt = 0; attempt < 1024; ++attempt) {
    rng.fill(std::span<std::uint8_t>(buf.data(), nbytes));
    U256 v = U256::from_be_bytes(ByteView(buf.data(), nbytes));
    v = v.shl(256 - bits).shr(256 - bits);
    if (!v.is_zero() && v < params.n()) return Scalar(params, v);
  }
  throw Error(ErrorCode::RngFailure, "rejection sampling did not terminate");
}

inline KeyPair keypair_from_private(const CurveParams& params,
                                    const Scalar& private_key) {
  detail::require_curve(private_key.curve(), params, "private key");
  if (private_key.is_zero()) {
    throw Error(ErrorCode::InvalidKey, "private key must be in [1, n-1]");
  }
  return KeyPair{private_key, scalar_mul(private_key, params.generator(), params)};
}

inline KeyPair generate_keypair(const CurveParams& params, RandomSource& rng) {
  return keypair_from_private(params, random_scalar(params, rng));
}

/// Validates a raw blinding value: 1 <= r < n.
inline Scalar blinding_scalar(const CurveParams& params, const U256& r) {
  if (r.is_zero() || r >= params.n()) {
    throw Error(ErrorCode::BlindingOutOfRange, "blinding value outside [1, n-1]");
  }
  return Scalar(params, r);
}

/// P + r*G. Used for I -> J at the RA and J -> K at the CA.
inline Point expand_public(const Point& pt, const Scalar& r,
                           const CurveParams& params) {
  detail::require_on_curve(pt, params, "public key");
  detail::require_curve(r.curve(), params, "blinding value");
  if (pt.is_infinity()) {
    throw Error(ErrorCode::InvalidKey, "cannot expand the point at infinity");
  }
  if (r.is_zero()) {
    throw Error(ErrorCode::BlindingOutOfRange, "blinding value outside [1, n-1]");
  }
  Point result = point_add(pt, scalar_mul(r, params.generator(), params), params);
  if (result.is_infinity()) {
    throw Error(ErrorCode::DegenerateResult, "expanded public key is infinity");
  }
  return result;
}

/// (x + r) mod n. Used for i -> j and j -> k at the end entity.
inline Scalar expand_private(const Scalar& x, const Scalar& r,
                             const CurveParams& params) {
  detail::require_curve(x.curve(), params, "private key");
  detail::require_curve(r.curve(), params, "blinding value");
  if (x.is_zero()) {
    throw Error(ErrorCode::InvalidKey, "private key must be in [1, n-1]");
  }
  if (r.is_zero()) {
    throw Error(ErrorCode::BlindingOutOfRange, "blinding value outside [1, n-1]");
  }
  Scalar out = scalar_add_mod_n(x, r, params);
  if (out.is_zero()) {
    throw Error(ErrorCode::DegenerateResult, "expanded private key is zero");
  }
  return out;
}

inline constexpr int kMaxBlindingAttempts = 8;

struct Expansion {
  Scalar blinding;
  Point expanded;
};

/// Draws r uniformly from [1, n-1] and returns (r, P + r*G), resampling on a
/// degenerate result at most kMaxBlindingAttempts times.
inline Expansion expand_public_random(const Point& pt, const CurveParams& params,
                                      RandomSource& rng) {
  for (int attempt = 0; attempt < kMaxBlindingAttempts; ++attempt) {
    Scalar r = random_scalar(params, rng);
    try {
      return Expansion{r, expand_public(pt, r, params)};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateResult) throw;
    }
  }
  throw Error(ErrorCode::DegenerateResult,
              "blinding resample limit reached");
}

}  // namespace anoncert

#endif  // ANONCERT_CURVE_HPP_
