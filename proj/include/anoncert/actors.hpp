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

#ifndef ANONCERT_ACTORS_HPP_
#define ANONCERT_ACTORS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "anoncert/cert.hpp"
#include "anoncert/curve.hpp"
#include "anoncert/envelope.hpp"
#include "anoncert/error.hpp"
#include "anoncert/random.hpp"

namespace anoncert {

/// Details key under which the RA passes the original request hash to the CA.
inline constexpr std::string_view kRequestHashKey = "request_hash";

// ---------------------------------------------------------------------------
// End entity
// ---------------------------------------------------------------------------

struct EeSecrets {
  Scalar r_ra;
  SymmetricKey s;
  Digest request_hash;
};

struct EeResult {
  Certificate anon_cert;
  Scalar j;
  Scalar k;
};

struct EeState {
  CurveId curve;
  KeyPair original;
  Certificate preexisting_cert;
  std::optional<EeSecrets> secrets;
  std::optional<EeResult> result;
};

inline EeState make_end_entity(const KeyPair& original,
                               const Certificate& preexisting_cert) {
  if (preexisting_cert.public_key != original.public_key) {
    throw Error(ErrorCode::KeyMismatch,
                "pre-existing certificate does not hold the original key");
  }
  return EeState{original.public_key.curve(), original, preexisting_cert,
                 std::nullopt, std::nullopt};
}

/// Drops any pending request, e.g. after the RA rejected it as degenerate.
inline EeState ee_reset(EeState state) {
  state.secrets.reset();
  return state;
}

/// Builds the signed certificate request. Random draws happen in a fixed
/// order: r_RA, then s, then the two ECIES ephemeral keys.
inline std::pair<CertificateRequest, EeState> ee_create_request(
    EeState state, const Point& ra_public, const Point& ca_public,
    const Details& details, RandomSource& rng) {
  if (state.secrets) {
    throw Error(ErrorCode::PendingRequest,
                "end entity already has a request in flight");
  }
  const CurveParams& params = curve_params(state.curve);
  Scalar r_ra = random_scalar(params, rng);
  SymmetricKey s = SymmetricKey::generate(rng);
  EciesCiphertext r_ra_ct = ecies_encrypt(ra_public, r_ra.to_bytes(), params, rng);
  EciesCiphertext s_ct = ecies_encrypt(ca_public, s.bytes(), params, rng);
  Signature sig =
      sign(state.original.private_key,
           request_tbs(state.preexisting_cert, r_ra_ct, s_ct, details), params);
  CertificateRequest req{state.preexisting_cert, std::move(r_ra_ct),
                         std::move(s_ct), details, sig};
  state.secrets = EeSecrets{r_ra, s, digest(encode(req))};
  return {std::move(req), std::move(state)};
}

/// Verifies the CA response, decrypts z, and derives j and k.
inline EeState ee_process_response(EeState state, const CertificateResponse& resp,
                                   const Point& ca_public) {
  if (!state.secrets) {
    throw Error(ErrorCode::NoPendingRequest, "no request awaiting a response");
  }
  const CurveParams& params = curve_params(state.curve);
  if (resp.curve != state.curve ||
      !verify(ca_public, response_tbs(resp.curve, resp.z_ct, resp.request_hash),
              resp.signature, params)) {
    throw Error(ErrorCode::BadSignature, "response signature does not verify");
  }
  const EeSecrets& secrets = *state.secrets;
  if (resp.request_hash != secrets.request_hash) {
    throw Error(ErrorCode::UnknownRequestHash,
                "response answers a different request");
  }
  IssuancePayload issued = [&] {
    try {
      return decode<IssuancePayload>(
          sym_decrypt(secrets.s, resp.z_ct, secrets.request_hash.bytes));
    } catch (const Error& e) {
      throw Error(ErrorCode::EnvelopeFailure, std::string("z: ") + e.what());
    }
  }();
  if (issued.anon_cert.kind != CertificateKind::anonymous ||
      !verify_certificate_signature(issued.anon_cert, ca_public, params)) {
    throw Error(ErrorCode::BadCertificate, "anonymous certificate is invalid");
  }
  if (issued.r_ca.curve() != state.curve || issued.r_ca.is_zero()) {
    throw Error(ErrorCode::EnvelopeFailure, "r_CA outside [1, n-1]");
  }
  Scalar j = expand_private(state.original.private_key, secrets.r_ra, params);
  Scalar k = expand_private(j, issued.r_ca, params);
  if (scalar_mul(k, params.generator(), params) != issued.anon_cert.public_key) {
    throw Error(ErrorCode::KeyMismatch,
                "formal private key does not match the certificate key");
  }
  state.result = EeResult{std::move(issued.anon_cert), j, k};
  state.secrets.reset();
  return state;
}

inline Ballot sign_ballot(const EeState& state, ByteView payload) {
  if (!state.result) {
    throw Error(ErrorCode::NotFinalized, "no anonymous certificate yet");
  }
  const CurveParams& params = curve_params(state.curve);
  return Ballot{Bytes(payload.begin(), payload.end()), state.result->anon_cert,
                sign(state.result->k, ballot_tbs(payload, state.result->anon_cert),
                     params)};
}

inline bool verify_ballot(const Ballot& ballot, const Point& ca_public,
                          std::int64_t now) {
  const CurveParams& params = curve_params(ballot.anon_cert.curve);
  if (ballot.anon_cert.kind != CertificateKind::anonymous ||
      !verify_certificate(ballot.anon_cert, ca_public, now, params)) {
    return false;
  }
  return verify(ballot.anon_cert.public_key,
                ballot_tbs(ballot.payload, ballot.anon_cert), ballot.signature,
                params);
}

// ---------------------------------------------------------------------------
// Registration authority
// ---------------------------------------------------------------------------

struct PendingEntry {
  std::string ee_id;
  Scalar r_ra;
};

struct RaState {
  KeyPair keypair;
  Point ca_public;
  std::set<Serial> eligibility;
  std::map<Digest, PendingEntry> pending;
  DetailPolicy policy = DetailPolicy::standard();
};

inline std::pair<ForwardedRequest, RaState> ra_process_request(
    RaState state, const CertificateRequest& req, std::string_view ee_id) {
  const CurveParams& params = curve_params(state.keypair.public_key.curve());
  const Certificate& cert = req.preexisting_cert;
  if (cert.curve != params.id() ||
      !verify(cert.public_key,
              request_tbs(cert, req.r_ra_ct, req.s_ct, req.details),
              req.signature, params)) {
    throw Error(ErrorCode::BadSignature,
                "request signature does not verify under the original key");
  }
  if (state.eligibility.count(cert.serial) == 0) {
    throw Error(ErrorCode::Ineligible, "certificate serial is not eligible");
  }
  Digest request_hash = digest(encode(req));
  if (state.pending.count(request_hash) != 0) {
    throw Error(ErrorCode::DuplicateRequest, "request already pending");
  }
  for (const auto& [hash, entry] : state.pending) {
    if (entry.ee_id == ee_id) {
      throw Error(ErrorCode::PendingRequest,
                  "end entity already has a request pending");
    }
  }
  Bytes r_ra_bytes;
  try {
    r_ra_bytes = ecies_decrypt(state.keypair.private_key, req.r_ra_ct, params);
  } catch (const Error& e) {
    throw Error(ErrorCode::EnvelopeFailure, std::string("r_RA': ") + e.what());
  }
  if (r_ra_bytes.size() != 32) {
    throw Error(ErrorCode::EnvelopeFailure, "r_RA must be 32 bytes");
  }
  Scalar r_ra = blinding_scalar(params, U256::from_be_bytes(r_ra_bytes));
  Point j = expand_public(cert.public_key, r_ra, params);

  Details details = sanitize_details(req.details, state.policy);
  details[std::string(kRequestHashKey)] = request_hash.to_hex();
  Signature sig = sign(state.keypair.private_key,
                       forwarded_tbs(params.id(), j, req.s_ct, details), params);
  ForwardedRequest fwd{params.id(), j, req.s_ct, std::move(details), sig};
  state.pending.emplace(request_hash, PendingEntry{std::string(ee_id), r_ra});
  return {std::move(fwd), std::move(state)};
}

/// Looks up the end entity a response belongs to and retires the pending
/// entry (and with it the stored r_RA).
inline std::tuple<std::string, CertificateResponse, RaState> ra_route_response(
    RaState state, const CertificateResponse& resp) {
  const CurveParams& params = curve_params(state.keypair.public_key.curve());
  if (resp.curve != params.id() ||
      !verify(state.ca_public,
              response_tbs(resp.curve, resp.z_ct, resp.request_hash),
              resp.signature, params)) {
    throw Error(ErrorCode::BadSignature, "response signature does not verify");
  }
  auto it = state.pending.find(resp.request_hash);
  if (it == state.pending.end()) {
    throw Error(ErrorCode::UnknownRequestHash,
                "no pending request with hash " + resp.request_hash.to_hex());
  }
  std::string ee_id = std::move(it->second.ee_id);
  state.pending.erase(it);
  return {std::move(ee_id), resp, std::move(state)};
}

// ---------------------------------------------------------------------------
// Certificate authority
// ---------------------------------------------------------------------------

struct CaState {
  KeyPair keypair;
  std::string name;
  Point trusted_ra_public;
  std::set<Serial> issued_serials;
};

/// Random draws happen in a fixed order: r_CA (with resampling), the
/// certificate serial, then the z nonce.
inline std::pair<CertificateResponse, CaState> ca_process_request(
    CaState state, const ForwardedRequest& fwd, const Validity& validity,
    RandomSource& rng) {
  const CurveParams& params = curve_params(state.keypair.public_key.curve());
  if (fwd.curve != params.id() ||
      !verify(state.trusted_ra_public,
              forwarded_tbs(fwd.curve, fwd.temporary_public_key, fwd.s_ct,
                            fwd.details),
              fwd.signature, params)) {
    throw Error(ErrorCode::BadSignature,
                "forwarded request signature does not verify");
  }
  auto hash_it = fwd.details.find(std::string(kRequestHashKey));
  if (hash_it == fwd.details.end()) {
    throw Error(ErrorCode::BadRequest, "forwarded request lacks request_hash");
  }
  Digest request_hash;
  try {
    request_hash = Digest::from_hex(hash_it->second);
  } catch (const Error&) {
    throw Error(ErrorCode::BadRequest, "request_hash is not a 32-byte hex digest");
  }
  Bytes s_bytes;
  try {
    s_bytes = ecies_decrypt(state.keypair.private_key, fwd.s_ct, params);
  } catch (const Error& e) {
    throw Error(ErrorCode::EnvelopeFailure, std::string("s': ") + e.what());
  }
  if (s_bytes.size() != 32) {
    throw Error(ErrorCode::EnvelopeFailure, "s must be 32 bytes");
  }
  SymmetricKey s = SymmetricKey::from_bytes(s_bytes);

  Expansion formal = expand_public_random(fwd.temporary_public_key, params, rng);
  Certificate cert =
      issue_certificate(state.keypair.private_key, state.name, "",
                        formal.expanded, validity, CertificateKind::anonymous,
                        params, rng);
  SymmetricCiphertext z =
      sym_encrypt(s, encode(IssuancePayload{cert, formal.blinding}),
                  request_hash.bytes, rng);
  Signature sig = sign(state.keypair.private_key,
                       response_tbs(params.id(), z, request_hash), params);
  state.issued_serials.insert(cert.serial);
  return {CertificateResponse{params.id(), std::move(z), request_hash, sig},
          std::move(state)};
}

// ---------------------------------------------------------------------------
// Transcript
// ---------------------------------------------------------------------------

enum class Actor : std::uint8_t { ee, ra, ca, tally };
enum class Direction : std::uint8_t { sent, received };

constexpr std::string_view to_string(Actor a) {
  switch (a) {
    case Actor::ee: return "EE";
    case Actor::ra: return "RA";
    case Actor::ca: return "CA";
    case Actor::tally: return "TALLY";
  }
  return "?";
}

constexpr std::string_view to_string(Direction d) {
  return d == Direction::sent ? "sent" : "received";
}

struct TranscriptEntry {
  Actor actor;
  Direction direction;
  Bytes message;
  std::string annotation;
};

/// Append-only record of every message an actor saw.
class Transcript {
 public:
  void record(Actor actor, Direction direction, Bytes message,
              std::string annotation = {}) {
    entries_.push_back(
        {actor, direction, std::move(message), std::move(annotation)});
  }

  const std::vector<TranscriptEntry>& entries() const { return entries_; }

  /// True if any message seen by `actor` contains `needle` as a substring.
  bool actor_saw(Actor actor, ByteView needle) const {
    for (const auto& e : entries_) {
      if (e.actor == actor && contains_bytes(e.message, needle)) return true;
    }
    return false;
  }

 private:
  std::vector<TranscriptEntry> entries_;
};

}  // namespace anoncert

#endif  // ANONCERT_ACTORS_HPP_
