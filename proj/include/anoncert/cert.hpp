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

#ifndef ANONCERT_CERT_HPP_
#define ANONCERT_CERT_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "anoncert/bytes.hpp"
#include "anoncert/curve.hpp"
#include "anoncert/envelope.hpp"
#include "anoncert/error.hpp"
#include "json.hpp"

namespace anoncert {

enum class CertificateKind : std::uint8_t { preexisting = 1, anonymous = 2 };

constexpr std::string_view to_string(CertificateKind kind) {
  return kind == CertificateKind::anonymous ? "anonymous" : "preexisting";
}

using Serial = std::array<std::uint8_t, 16>;
using Details = std::map<std::string, std::string>;

/// Seconds since the Unix epoch, inclusive on both ends.
struct Validity {
  std::int64_t not_before = 0;
  std::int64_t not_after = 0;

  friend bool operator==(const Validity&, const Validity&) = default;
};

/// Minimal certificate: enough of X.509 to bind a public key to an issuer.
struct Certificate {
  Serial serial{};
  std::string subject;
  std::string issuer;
  CurveId curve = CurveId::secp256r1;
  Point public_key;
  Validity validity;
  CertificateKind kind = CertificateKind::preexisting;
  Signature issuer_signature;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// EE -> RA. Signed with the end entity's original private key.
struct CertificateRequest {
  Certificate preexisting_cert;
  EciesCiphertext r_ra_ct;
  EciesCiphertext s_ct;
  Details details;
  Signature signature;

  friend bool operator==(const CertificateRequest&,
                         const CertificateRequest&) = default;
};

/// RA -> CA. Carries J in place of I and a sanitized detail map.
struct ForwardedRequest {
  CurveId curve = CurveId::secp256r1;
  Point temporary_public_key;
  EciesCiphertext s_ct;
  Details details;
  Signature signature;

  friend bool operator==(const ForwardedRequest&,
                         const ForwardedRequest&) = default;
};

/// CA -> RA -> EE.
struct CertificateResponse {
  CurveId curve = CurveId::secp256r1;
  SymmetricCiphertext z_ct;
  Digest request_hash;
  Signature signature;

  friend bool operator==(const CertificateResponse&,
                         const CertificateResponse&) = default;
};

struct Ballot {
  Bytes payload;
  Certificate anon_cert;
  Signature signature;

  friend bool operator==(const Ballot&, const Ballot&) = default;
};

/// Plaintext of the z envelope: the anonymous certificate and r_CA.
struct IssuancePayload {
  Certificate anon_cert;
  Scalar r_ca;

  friend bool operator==(const IssuancePayload&, const IssuancePayload&) = default;
};

// ---------------------------------------------------------------------------
// Canonical binary encoding
//
// Every message starts with a 2-byte big-endian type tag. Fields follow in
// declaration order. Variable-length fields carry a 4-byte big-endian length
// prefix; maps are a 4-byte count followed by key/value pairs in strictly
// increasing key order. Decoding rejects trailing bytes and non-canonical
// maps, so encode(decode(b)) == b for every accepted b.
// ---------------------------------------------------------------------------

enum class TypeTag : std::uint16_t {
  certificate = 0x0001,
  certificate_request = 0x0002,
  forwarded_request = 0x0003,
  certificate_response = 0x0004,
  ballot = 0x0005,
  issuance_payload = 0x0006,
  // To-be-signed forms.
  certificate_tbs = 0x8001,
  certificate_request_tbs = 0x8002,
  forwarded_request_tbs = 0x8003,
  certificate_response_tbs = 0x8004,
  ballot_tbs = 0x8005,
};

namespace wire {

class Writer {
 public:
  explicit Writer(TypeTag tag) { u16(static_cast<std::uint16_t>(tag)); }

  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
    out_.push_back(static_cast<std::uint8_t>(v));
  }
  void u32(std::uint32_t v) {
    for (int i = 3; i >= 0; --i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void i64(std::int64_t v) {
    auto u = static_cast<std::uint64_t>(v);
    for (int i = 7; i >= 0; --i) out_.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
  }
  void fixed(ByteView b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void blob(ByteView b) {
    u32(static_cast<std::uint32_t>(b.size()));
    fixed(b);
  }
  void string(std::string_view s) {
    blob(ByteView(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
  }
  void point(const Point& p) {
    if (p.is_infinity()) {
      u8(0x00);
    } else {
      u8(0x04);
      fixed(p.to_bytes());
    }
  }
  void details(const Details& d) {
    u32(static_cast<std::uint32_t>(d.size()));
    for (const auto& [k, v] : d) {
      string(k);
      string(v);
    }
  }

  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

class Reader {
 public:
  Reader(ByteView data, TypeTag expected, std::string_view type_name)
      : data_(data), type_name_(type_name) {
    auto tag = u16("type tag");
    if (tag != static_cast<std::uint16_t>(expected)) {
      fail("type tag", "unexpected type tag");
    }
  }

  [[noreturn]] void fail(std::string_view field, std::string_view why) const {
    throw Error(ErrorCode::MalformedEncoding,
                std::string(type_name_) + "." + std::string(field) + ": " +
                    std::string(why));
  }

  ByteView fixed(std::size_t n, std::string_view field) {
    if (data_.size() - pos_ < n) fail(field, "truncated");
    ByteView out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint8_t u8(std::string_view field) { return fixed(1, field)[0]; }
  std::uint16_t u16(std::string_view field) {
    auto b = fixed(2, field);
    return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
  }
  std::uint32_t u32(std::string_view field) {
    auto b = fixed(4, field);
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) |
           (std::uint32_t{b[2]} << 8) | std::uint32_t{b[3]};
  }
  std::int64_t i64(std::string_view field) {
    auto b = fixed(8, field);
    std::uint64_t u = 0;
    for (std::uint8_t byte : b) u = (u << 8) | byte;
    return static_cast<std::int64_t>(u);
  }
  ByteView blob(std::string_view field) {
    std::uint32_t n = u32(field);
    return fixed(n, field);
  }
  std::string string(std::string_view field) {
    ByteView b = blob(field);
    return std::string(b.begin(), b.end());
  }
  CurveId curve(std::string_view field) {
    std::uint8_t b = u8(field);
    if (b < 1 || b > 3) fail(field, "unknown curve id");
    return static_cast<CurveId>(b);
  }
  /// Points inside messages must be on the curve; decoding checks that.
  Point point(const CurveParams& params, std::string_view field) {
    std::uint8_t marker = u8(field);
    if (marker == 0x00) return Point::infinity(params.id());
    if (marker != 0x04) fail(field, "unknown point marker");
    ByteView b = fixed(64, field);
    try {
      return Point::from_affine(params, U256::from_be_bytes(b.subspan(0, 32)),
                                U256::from_be_bytes(b.subspan(32, 32)));
    } catch (const Error&) {
      fail(field, "point not on curve");
    }
  }
  Scalar scalar(const CurveParams& params, std::string_view field) {
    ByteView b = fixed(32, field);
    U256 v = U256::from_be_bytes(b);
    if (v >= params.n()) fail(field, "scalar not below the group order");
    return Scalar(params, v);
  }
  Signature signature(const CurveParams& params, std::string_view field) {
    ByteView b = fixed(64, field);
    try {
      return Signature::from_bytes(params, b);
    } catch (const Error&) {
      fail(field, "signature component out of range");
    }
  }
  EciesCiphertext ecies(const CurveParams& params, std::string_view field) {
    ByteView b = blob(field);
    try {
      return EciesCiphertext::from_bytes(params.id(), b);
    } catch (const Error&) {
      fail(field, "bad ECIES ciphertext");
    }
  }
  SymmetricCiphertext symmetric(std::string_view field) {
    ByteView b = blob(field);
    try {
      return SymmetricCiphertext::from_bytes(b);
    } catch (const Error&) {
      fail(field, "bad AES-GCM ciphertext");
    }
  }
  Details details(std::string_view field) {
    std::uint32_t n = u32(field);
    Details out;
    const std::string* prev = nullptr;
    for (std::uint32_t i = 0; i < n; ++i) {
      std::string key = string(field);
      std::string value = string(field);
      if (prev != nullptr && !(*prev < key)) {
        fail(field, "keys not strictly increasing");
      }
      auto it = out.emplace_hint(out.end(), std::move(key), std::move(value));
      prev = &it->first;
    }
    return out;
  }

  /// Length of the next length-prefixed nested message, consumed whole.
  ByteView nested(std::string_view field) { return blob(field); }

  void finish() const {
    if (pos_ != data_.size()) fail("(end)", "trailing bytes");
  }

 private:
  ByteView data_;
  std::size_t pos_ = 0;
  std::string_view type_name_;
};

inline void certificate_body(Writer& w, const Certificate& c) {
  w.u8(static_cast<std::uint8_t>(c.curve));
  w.fixed(c.serial);
  w.string(c.subject);
  w.string(c.issuer);
  w.point(c.public_key);
  w.i64(c.validity.not_before);
  w.i64(c.validity.not_after);
  w.u8(static_cast<std::uint8_t>(c.kind));
}

}  // namespace wire

inline Bytes certificate_tbs(const Certificate& c) {
  wire::Writer w(TypeTag::certificate_tbs);
  wire::certificate_body(w, c);
  return w.take();
}

inline Bytes encode(const Certificate& c) {
  wire::Writer w(TypeTag::certificate);
  wire::certificate_body(w, c);
  w.fixed(c.issuer_signature.to_bytes());
  return w.take();
}

inline Bytes request_tbs(const Certificate& preexisting_cert,
                         const EciesCiphertext& r_ra_ct,
                         const EciesCiphertext& s_ct, const Details& details) {
  wire::Writer w(TypeTag::certificate_request_tbs);
  w.blob(encode(preexisting_cert));
  w.blob(r_ra_ct.to_bytes());
  w.blob(s_ct.to_bytes());
  w.details(details);
  return w.take();
}

inline Bytes encode(const CertificateRequest& r) {
  wire::Writer w(TypeTag::certificate_request);
  w.blob(encode(r.preexisting_cert));
  w.blob(r.r_ra_ct.to_bytes());
  w.blob(r.s_ct.to_bytes());
  w.details(r.details);
  w.fixed(r.signature.to_bytes());
  return w.take();
}

inline Bytes forwarded_tbs(CurveId curve, const Point& temporary_public_key,
                           const EciesCiphertext& s_ct, const Details& details) {
  wire::Writer w(TypeTag::forwarded_request_tbs);
  w.u8(static_cast<std::uint8_t>(curve));
  w.point(temporary_public_key);
  w.blob(s_ct.to_bytes());
  w.details(details);
  return w.take();
}

inline Bytes encode(const ForwardedRequest& f) {
  wire::Writer w(TypeTag::forwarded_request);
  w.u8(static_cast<std::uint8_t>(f.curve));
  w.point(f.temporary_public_key);
  w.blob(f.s_ct.to_bytes());
  w.details(f.details);
  w.fixed(f.signature.to_bytes());
  return w.take();
}

inline Bytes response_tbs(CurveId curve, const SymmetricCiphertext& z_ct,
                          const Digest& request_hash) {
  wire::Writer w(TypeTag::certificate_response_tbs);
  w.u8(static_cast<std::uint8_t>(curve));
  w.blob(z_ct.to_bytes());
  w.fixed(request_hash.bytes);
  return w.take();
}

inline Bytes encode(const CertificateResponse& r) {
  wire::Writer w(TypeTag::certificate_response);
  w.u8(static_cast<std::uint8_t>(r.curve));
  w.blob(r.z_ct.to_bytes());
  w.fixed(r.request_hash.bytes);
  w.fixed(r.signature.to_bytes());
  return w.take();
}

inline Bytes ballot_tbs(ByteView payload, const Certificate& anon_cert) {
  wire::Writer w(TypeTag::ballot_tbs);
  w.blob(payload);
  w.blob(encode(anon_cert));
  return w.take();
}

inline Bytes encode(const Ballot& b) {
  wire::Writer w(TypeTag::ballot);
  w.blob(b.payload);
  w.blob(encode(b.anon_cert));
  w.fixed(b.signature.to_bytes());
  return w.take();
}

inline Bytes encode(const IssuancePayload& p) {
  wire::Writer w(TypeTag::issuance_payload);
  w.blob(encode(p.anon_cert));
  w.fixed(p.r_ca.to_bytes());
  return w.take();
}

template <typename T>
T decode(ByteView bytes);

template <>
inline Certificate decode<Certificate>(ByteView bytes) {
  wire::Reader r(bytes, TypeTag::certificate, "Certificate");
  CurveId curve = r.curve("curve_id");
  const CurveParams& params = curve_params(curve);
  Serial serial{};
  ByteView s = r.fixed(serial.size(), "serial");
  std::copy(s.begin(), s.end(), serial.begin());
  std::string subject = r.string("subject");
  std::string issuer = r.string("issuer");
  Point public_key = r.point(params, "public_key");
  Validity validity{r.i64("not_before"), r.i64("not_after")};
  std::uint8_t kind = r.u8("kind");
  if (kind != 1 && kind != 2) r.fail("kind", "unknown certificate kind");
  Signature sig = r.signature(params, "issuer_signature");
  r.finish();
  return Certificate{serial,   std::move(subject),
                     std::move(issuer), curve,
                     public_key,        validity,
                     static_cast<CertificateKind>(kind), sig};
}

template <>
inline CertificateRequest decode<CertificateRequest>(ByteView bytes) {
  wire::Reader r(bytes, TypeTag::certificate_request, "CertificateRequest");
  Certificate cert = decode<Certificate>(r.nested("preexisting_cert"));
  const CurveParams& params = curve_params(cert.curve);
  EciesCiphertext r_ra = r.ecies(params, "r_ra_ct");
  EciesCiphertext s_ct = r.ecies(params, "s_ct");
  Details details = r.details("details");
  Signature sig = r.signature(params, "signature");
  r.finish();
  return CertificateRequest{std::move(cert), std::move(r_ra), std::move(s_ct),
                            std::move(details), sig};
}

template <>
inline ForwardedRequest decode<ForwardedRequest>(ByteView bytes) {
  wire::Reader r(bytes, TypeTag::forwarded_request, "ForwardedRequest");
  CurveId curve = r.curve("curve_id");
  const CurveParams& params = curve_params(curve);
  Point j = r.point(params, "temporary_public_key");
  EciesCiphertext s_ct = r.ecies(params, "s_ct");
  Details details = r.details("details");
  Signature sig = r.signature(params, "signature");
  r.finish();
  return ForwardedRequest{curve, j, std::move(s_ct), std::move(details), sig};
}

template <>
inline CertificateResponse decode<CertificateResponse>(ByteView bytes) {
  wire::Reader r(bytes, TypeTag::certificate_response, "CertificateResponse");
  CurveId curve = r.curve("curve_id");
  const CurveParams& params = curve_params(curve);
  SymmetricCiphertext z = r.symmetric("z_ct");
  Digest hash;
  ByteView h = r.fixed(hash.bytes.size(), "request_hash");
  std::copy(h.begin(), h.end(), hash.bytes.begin());
  Signature sig = r.signature(params, "signature");
  r.finish();
  return CertificateResponse{curve, std::move(z), hash, sig};
}

template <>
inline Ballot decode<Ballot>(ByteView bytes) {
  wire::Reader r(bytes, TypeTag::ballot, "Ballot");
  ByteView payload = r.blob("payload");
  Certificate cert = decode<Certificate>(r.nested("anon_cert"));
  Signature sig = r.signature(curve_params(cert.curve), "signature");
  r.finish();
  return Ballot{Bytes(payload.begin(), payload.end()), std::move(cert), sig};
}

template <>
inline IssuancePayload decode<IssuancePayload>(ByteView bytes) {
  wire::Reader r(bytes, TypeTag::issuance_payload, "IssuancePayload");
  Certificate cert = decode<Certificate>(r.nested("anon_cert"));
  Scalar r_ca = r.scalar(curve_params(cert.curve), "r_ca");
  r.finish();
  return IssuancePayload{std::move(cert), r_ca};
}

using AnyMessage = std::variant<Certificate, CertificateRequest, ForwardedRequest,
                                CertificateResponse, Ballot, IssuancePayload>;

/// Dispatches on the type tag.
inline AnyMessage decode_any(ByteView bytes) {
  if (bytes.size() < 2) {
    throw Error(ErrorCode::MalformedEncoding, "message shorter than type tag");
  }
  switch (static_cast<TypeTag>((bytes[0] << 8) | bytes[1])) {
    case TypeTag::certificate: return decode<Certificate>(bytes);
    case TypeTag::certificate_request: return decode<CertificateRequest>(bytes);
    case TypeTag::forwarded_request: return decode<ForwardedRequest>(bytes);
    case TypeTag::certificate_response: return decode<CertificateResponse>(bytes);
    case TypeTag::ballot: return decode<Ballot>(bytes);
    case TypeTag::issuance_payload: return decode<IssuancePayload>(bytes);
    default:
      throw Error(ErrorCode::MalformedEncoding, "unknown type tag");
  }
}

// ---------------------------------------------------------------------------
// Issuance and verification
// ---------------------------------------------------------------------------

inline Certificate issue_certificate(const Scalar& issuer_private,
                                     std::string_view issuer_name,
                                     std::string_view subject,
                                     const Point& public_key,
                                     const Validity& validity,
                                     CertificateKind kind,
                                     const CurveParams& params,
                                     RandomSource& rng) {
  if (public_key.curve() != params.id() || public_key.is_infinity() ||
      !is_on_curve(public_key, params)) {
    throw Error(ErrorCode::InvalidKey, "subject key must be a finite curve point");
  }
  if (issuer_private.curve() != params.id() || issuer_private.is_zero()) {
    throw Error(ErrorCode::InvalidKey, "issuer key must be in [1, n-1]");
  }
  if (validity.not_before > validity.not_after) {
    throw Error(ErrorCode::InvalidValidity, "not_before is after not_after");
  }
  if (kind == CertificateKind::anonymous && !subject.empty()) {
    throw Error(ErrorCode::InvalidCertificate,
                "anonymous certificates carry no subject");
  }
  Certificate cert{{},
                   std::string(subject),
                   std::string(issuer_name),
                   params.id(),
                   public_key,
                   validity,
                   kind,
                   Signature{Scalar::zero(params), Scalar::zero(params)}};
  rng.fill(cert.serial);
  cert.issuer_signature = sign(issuer_private, certificate_tbs(cert), params);
  return cert;
}

/// Signature and structural checks only; no validity window.
inline bool verify_certificate_signature(const Certificate& cert,
                                         const Point& issuer_public,
                                         const CurveParams& params) {
  if (cert.curve != params.id()) return false;
  if (cert.kind == CertificateKind::anonymous && !cert.subject.empty()) {
    return false;
  }
  if (!is_on_curve(cert.public_key, params) || cert.public_key.is_infinity()) {
    return false;
  }
  return verify(issuer_public, certificate_tbs(cert), cert.issuer_signature,
                params);
}

inline bool verify_certificate(const Certificate& cert,
                               const Point& issuer_public, std::int64_t now,
                               const CurveParams& params) {
  if (now < cert.validity.not_before || now > cert.validity.not_after) {
    return false;
  }
  return verify_certificate_signature(cert, issuer_public, params);
}

// ---------------------------------------------------------------------------
// Detail sanitation
// ---------------------------------------------------------------------------

/// Which request details survive the RA. A key is kept only if it is on the
/// allowlist; the denylist names fields that must never be forwarded, and the
/// two lists may not overlap.
class DetailPolicy {
 public:
  DetailPolicy(std::set<std::string> allowlist, std::set<std::string> denylist)
      : allowlist_(std::move(allowlist)), denylist_(std::move(denylist)) {
    for (const auto& key : allowlist_) {
      if (denylist_.count(key) != 0) {
        throw Error(ErrorCode::InvalidConfig,
                    "detail key on both allowlist and denylist: " + key);
      }
    }
  }

  static DetailPolicy standard() {
    return DetailPolicy(default_allowlist(), default_denylist());
  }

  static std::set<std::string> default_allowlist() {
    return {"purpose", "election_id", "curve_id"};
  }
  static std::set<std::string> default_denylist() {
    return {"name",    "full_name", "email",      "phone",
            "address", "national_id", "birth_date", "subject"};
  }

  const std::set<std::string>& allowlist() const { return allowlist_; }
  const std::set<std::string>& denylist() const { return denylist_; }

  bool keeps(const std::string& key) const {
    return denylist_.count(key) == 0 && allowlist_.count(key) != 0;
  }

 private:
  std::set<std::string> allowlist_;
  std::set<std::string> denylist_;
};

inline Details sanitize_details(const Details& details,
                                const DetailPolicy& policy = DetailPolicy::standard()) {
  Details out;
  for (const auto& [key, value] : details) {
    if (policy.keeps(key)) out.emplace(key, value);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Diagnostic JSON dump (never hashed or signed)
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const Point& p) {
  if (p.is_infinity()) return "INF";
  return {{"x", p.x().to_hex()}, {"y", p.y().to_hex()}};
}

inline nlohmann::json to_json(const Signature& s) {
  return {{"r", s.r.to_hex()}, {"s", s.s.to_hex()}};
}

inline nlohmann::json to_json(const Certificate& c) {
  return {{"serial", hex_encode(c.serial)},
          {"subject", c.subject},
          {"issuer", c.issuer},
          {"curve", std::string(to_string(c.curve))},
          {"public_key", to_json(c.public_key)},
          {"not_before", c.validity.not_before},
          {"not_after", c.validity.not_after},
          {"kind", std::string(to_string(c.kind))},
          {"issuer_signature", to_json(c.issuer_signature)}};
}

inline nlohmann::json to_json(const CertificateRequest& r) {
  return {{"type", "CertificateRequest"},
          {"preexisting_cert", to_json(r.preexisting_cert)},
          {"r_ra_ct", hex_encode(r.r_ra_ct.to_bytes())},
          {"s_ct", hex_encode(r.s_ct.to_bytes())},
          {"details", r.details},
          {"signature", to_json(r.signature)}};
}

inline nlohmann::json to_json(const ForwardedRequest& f) {
  return {{"type", "ForwardedRequest"},
          {"curve", std::string(to_string(f.curve))},
          {"temporary_public_key", to_json(f.temporary_public_key)},
          {"s_ct", hex_encode(f.s_ct.to_bytes())},
          {"details", f.details},
          {"signature", to_json(f.signature)}};
}

inline nlohmann::json to_json(const CertificateResponse& r) {
  return {{"type", "CertificateResponse"},
          {"curve", std::string(to_string(r.curve))},
          {"z_ct", hex_encode(r.z_ct.to_bytes())},
          {"request_hash", r.request_hash.to_hex()},
          {"signature", to_json(r.signature)}};
}

inline nlohmann::json to_json(const Ballot& b) {
  return {{"type", "Ballot"},
          {"payload", hex_encode(b.payload)},
          {"anon_cert", to_json(b.anon_cert)},
          {"signature", to_json(b.signature)}};
}

inline nlohmann::json to_json(const IssuancePayload& p) {
  return {{"type", "IssuancePayload"},
          {"anon_cert", to_json(p.anon_cert)},
          {"r_ca", p.r_ca.to_hex()}};
}

}  // namespace anoncert

#endif  // ANONCERT_CERT_HPP_
