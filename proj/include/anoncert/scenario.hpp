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

#ifndef ANONCERT_SCENARIO_HPP_
#define ANONCERT_SCENARIO_HPP_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "anoncert/actors.hpp"
#include "anoncert/cert.hpp"
#include "anoncert/curve.hpp"
#include "anoncert/envelope.hpp"
#include "anoncert/error.hpp"
#include "anoncert/random.hpp"
#include "json.hpp"

namespace anoncert {

struct ScenarioConfig {
  CurveId curve = CurveId::brainpoolP256r1;
  std::uint32_t num_voters = 10;
  std::uint64_t rng_seed = 42;
  std::vector<std::string> candidate_list{"candidate-a", "candidate-b",
                                          "candidate-c"};
  std::vector<std::string> detail_allowlist{"curve_id", "election_id", "purpose"};
  std::string preset = "custom";
  std::string election_id = "election-1";
  // Fixed clock so reports are reproducible.
  std::int64_t now = 1767225600;
  bool concurrent = false;

  void validate() const {
    if (num_voters < 1) {
      throw Error(ErrorCode::InvalidConfig, "num_voters must be at least 1");
    }
    if (candidate_list.empty()) {
      throw Error(ErrorCode::InvalidConfig, "candidate_list must not be empty");
    }
  }
};

/// Actor names for the two case-study presets. They differ from each other
/// only in curve and labels.
struct PresetLabels {
  std::string legacy_issuer;
  std::string ra_name;
  std::string ca_name;
  std::string purpose;
};

inline PresetLabels preset_labels(std::string_view preset) {
  if (preset == "social-platform") {
    return {"social-platform-identity-ca", "social-platform-server",
            "impartial-third-party-ca", "platform-poll"};
  }
  if (preset == "citizen-cert") {
    return {"citizen-digital-certificate-ca", "local-district-office",
            "election-commission", "representative-election"};
  }
  return {"legacy-issuer", "registration-authority", "certificate-authority",
          "anonymous-vote"};
}

inline ScenarioConfig preset_config(std::string_view preset) {
  ScenarioConfig cfg;
  if (preset == "social-platform") {
    cfg.curve = CurveId::brainpoolP256r1;
  } else if (preset == "citizen-cert") {
    cfg.curve = CurveId::secp256r1;
  } else {
    throw Error(ErrorCode::InvalidConfig, "unknown preset: " + std::string(preset));
  }
  cfg.preset = std::string(preset);
  return cfg;
}

struct VoterOutcome {
  std::uint32_t index = 0;
  std::string ee_id;
  bool success = false;
  std::string error;
  int attempts = 0;
  std::string candidate;
  bool ballot_verified = false;
  bool key_invariant = false;
  std::vector<std::string> ra_view_violations;
  std::vector<std::string> ca_view_violations;
  std::string request_hash;
  std::string anon_cert_serial;
  std::string formal_public_key;
};

struct RunReport {
  ScenarioConfig config;
  std::string ra_public;
  std::string ca_public;
  std::vector<VoterOutcome> voters;
  std::map<std::string, std::uint32_t> tally;
  std::uint32_t issued = 0;
  std::uint32_t failed = 0;
  std::uint32_t ballots_verified = 0;
  std::uint32_t invariant_failures = 0;
  std::uint32_t view_separation_violations = 0;
  bool view_checks_applied = true;
  double elapsed_ms = 0;

  bool all_passed() const {
    return failed == 0 && ballots_verified == voters.size() &&
           invariant_failures == 0 && view_separation_violations == 0;
  }
};

namespace detail {

/// Unbounded blocking queue used for actor message passing.
template <typename T>
class Mailbox {
 public:
  void push(T item) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      items_.push_back(std::move(item));
    }
    cv_.notify_one();
  }

  /// Blocks until an item arrives; empty once closed and drained.
  std::optional<T> pop() {
    std::unique_lock<std::mutex> lock(mu_);
    cv_.wait(lock, [&] { return closed_ || !items_.empty(); });
    if (items_.empty()) return std::nullopt;
    T item = std::move(items_.front());
    items_.pop_front();
    return item;
  }

  void close() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      closed_ = true;
    }
    cv_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<T> items_;
  bool closed_ = false;
};

inline std::string describe(const std::exception& e) { return e.what(); }

inline bool is_degenerate(const Error& e) {
  return e.code() == ErrorCode::DegenerateResult;
}

struct VoterSlot {
  std::string ee_id;
  EeState ee;
  DeterministicRandom rng;
  Transcript transcript;
  VoterOutcome outcome;
  std::optional<Scalar> r_ra;  // auditor copies, never sent anywhere
  std::optional<Scalar> r_ca;
  Bytes ballot;
};

// Holds every actor for one scenario. Each step function touches exactly one
// actor's state, so in concurrent mode a step only runs on its actor's thread.
class ScenarioRun {
 public:
  explicit ScenarioRun(const ScenarioConfig& cfg)
      : cfg_(cfg),
        params_(curve_params(cfg.curve)),
        labels_(preset_labels(cfg.preset)),
        root_(cfg.rng_seed, "anoncert-scenario"),
        validity_{cfg.now - 86400, cfg.now + 30 * 86400},
        ra_(provision_ra()),
        ca_(provision_ca()) {
    DeterministicRandom legacy_rng = root_.split("legacy-issuer");
    legacy_ = generate_keypair(params_, legacy_rng);
    ra_.ca_public = ca_.keypair.public_key;
    ca_.trusted_ra_public = ra_.keypair.public_key;
    ra_.policy = DetailPolicy(
        std::set<std::string>(cfg.detail_allowlist.begin(),
                              cfg.detail_allowlist.end()),
        DetailPolicy::default_denylist());

    slots_.reserve(cfg.num_voters);
    for (std::uint32_t v = 0; v < cfg.num_voters; ++v) {
      std::string ee_id = voter_id(v);
      DeterministicRandom rng = root_.split("voter:" + ee_id);
      KeyPair original = generate_keypair(params_, rng);
      Certificate cert = issue_certificate(
          legacy_.private_key, labels_.legacy_issuer, "Voter " + ee_id,
          original.public_key, validity_, CertificateKind::preexisting, params_,
          rng);
      ra_.eligibility.insert(cert.serial);
      VoterOutcome outcome;
      outcome.index = v;
      outcome.ee_id = ee_id;
      slots_.push_back(VoterSlot{ee_id, make_end_entity(original, cert),
                                 std::move(rng), {}, outcome, {}, {}, {}});
      index_of_[ee_id] = v;
    }
  }

  RunReport run() {
    auto start = std::chrono::steady_clock::now();
    if (cfg_.concurrent) {
      run_concurrent();
    } else {
      run_sequential();
    }
    tally_and_audit();
    RunReport report;
    report.config = cfg_;
    report.ra_public = ra_.keypair.public_key.to_hex();
    report.ca_public = ca_.keypair.public_key.to_hex();
    report.view_checks_applied = view_scan_meaningful();
    for (const auto& c : cfg_.candidate_list) report.tally[c] = 0;
    for (const auto& slot : slots_) {
      const VoterOutcome& o = slot.outcome;
      report.voters.push_back(o);
      if (o.success) ++report.issued; else ++report.failed;
      if (o.ballot_verified) {
        ++report.ballots_verified;
        ++report.tally[o.candidate];
      }
      if (o.success && !o.key_invariant) ++report.invariant_failures;
      report.view_separation_violations += static_cast<std::uint32_t>(
          o.ra_view_violations.size() + o.ca_view_violations.size());
    }
    report.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
  }

  const std::vector<VoterSlot>& slots() const { return slots_; }

 private:
  std::string voter_id(std::uint32_t v) const {
    std::string n = std::to_string(v + 1);
    return "voter-" + std::string(n.size() < 4 ? 4 - n.size() : 0, '0') + n;
  }

  RaState provision_ra() {
    DeterministicRandom rng = root_.split("ra");
    return RaState{generate_keypair(params_, rng), Point::infinity(params_.id()),
                   {}, {}, DetailPolicy::standard()};
  }

  CaState provision_ca() {
    DeterministicRandom rng = root_.split("ca");
    return CaState{generate_keypair(params_, rng), labels_.ca_name,
                   Point::infinity(params_.id()), {}};
  }

  // -- EE steps ------------------------------------------------------------

  Bytes ee_start(VoterSlot& slot) {
    ++slot.outcome.attempts;
    Details details{{"name", "Voter " + slot.ee_id},
                    {"email", slot.ee_id + "@example.org"},
                    {"national_id", hex_encode(slot.ee.preexisting_cert.serial)},
                    {"election_id", cfg_.election_id},
                    {"purpose", labels_.purpose},
                    {"curve_id", std::string(params_.name())}};
    auto [req, ee] = ee_create_request(std::move(slot.ee), ra_.keypair.public_key,
                                       ca_.keypair.public_key, details, slot.rng);
    slot.ee = std::move(ee);
    slot.r_ra = slot.ee.secrets->r_ra;
    Bytes bytes = encode(req);
    slot.transcript.record(Actor::ee, Direction::sent, bytes, "CertificateRequest");
    return bytes;
  }

  void ee_finish(VoterSlot& slot, const Bytes& bytes) {
    slot.transcript.record(Actor::ee, Direction::received, bytes,
                           "CertificateResponse");
    CertificateResponse resp = decode<CertificateResponse>(bytes);
    // Auditor view: recover r_CA with the EE's own key to check the
    // end-to-end invariant independently of ee_process_response.
    const EeSecrets& secrets = *slot.ee.secrets;
    slot.r_ca = decode<IssuancePayload>(
                    sym_decrypt(secrets.s, resp.z_ct, secrets.request_hash.bytes))
                    .r_ca;
    slot.outcome.request_hash = secrets.request_hash.to_hex();
    slot.ee = ee_process_response(std::move(slot.ee), resp, ca_.keypair.public_key);

    std::uint32_t pick = uniform_index(
        slot.rng, static_cast<std::uint32_t>(cfg_.candidate_list.size()));
    slot.outcome.candidate = cfg_.candidate_list[pick];
    Ballot ballot =
        sign_ballot(slot.ee, to_bytes(cfg_.election_id + ":" + slot.outcome.candidate));
    slot.ballot = encode(ballot);
    slot.transcript.record(Actor::ee, Direction::sent, slot.ballot, "Ballot");
    slot.outcome.success = true;
    slot.outcome.anon_cert_serial = hex_encode(slot.ee.result->anon_cert.serial);
    slot.outcome.formal_public_key = slot.ee.result->anon_cert.public_key.to_hex();
  }

  static std::uint32_t uniform_index(RandomSource& rng, std::uint32_t bound) {
    const std::uint32_t limit = UINT32_MAX - UINT32_MAX % bound;
    while (true) {
      std::array<std::uint8_t, 4> b{};
      rng.fill(b);
      std::uint32_t v = (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) |
                        (std::uint32_t{b[2]} << 8) | b[3];
      if (v < limit) return v % bound;
    }
  }

  // -- RA steps ------------------------------------------------------------

  Bytes ra_on_request(VoterSlot& slot, const Bytes& bytes) {
    slot.transcript.record(Actor::ra, Direction::received, bytes,
                           "CertificateRequest");
    auto [fwd, ra] = ra_process_request(ra_, decode<CertificateRequest>(bytes),
                                        slot.ee_id);
    ra_ = std::move(ra);
    Bytes out = encode(fwd);
    slot.transcript.record(Actor::ra, Direction::sent, out, "ForwardedRequest");
    return out;
  }

  std::pair<std::uint32_t, Bytes> ra_on_response(const Bytes& bytes) {
    auto [ee_id, resp, ra] =
        ra_route_response(ra_, decode<CertificateResponse>(bytes));
    ra_ = std::move(ra);
    std::uint32_t index = index_of_.at(ee_id);
    VoterSlot& slot = slots_[index];
    slot.transcript.record(Actor::ra, Direction::received, bytes,
                           "CertificateResponse");
    Bytes out = encode(resp);
    slot.transcript.record(Actor::ra, Direction::sent, out, "CertificateResponse");
    return {index, out};
  }

  // -- CA step -------------------------------------------------------------

  Bytes ca_on_forward(VoterSlot& slot, const Bytes& bytes) {
    slot.transcript.record(Actor::ca, Direction::received, bytes, "ForwardedRequest");
    ForwardedRequest fwd = decode<ForwardedRequest>(bytes);
    auto hash = fwd.details.find(std::string(kRequestHashKey));
    // Per-request stream: the CA's draws do not depend on arrival order.
    DeterministicRandom rng = root_.split(
        "ca-request:" + (hash == fwd.details.end() ? std::string() : hash->second));
    auto [resp, ca] = ca_process_request(ca_, fwd, validity_, rng);
    ca_ = std::move(ca);
    Bytes out = encode(resp);
    slot.transcript.record(Actor::ca, Direction::sent, out, "CertificateResponse");
    return out;
  }

  void fail(VoterSlot& slot, const std::exception& e) {
    slot.outcome.success = false;
    slot.outcome.error = describe(e);
  }

  // -- schedulers ----------------------------------------------------------

  void run_sequential() {
    for (auto& slot : slots_) {
      try {
        Bytes fwd;
        while (true) {
          Bytes req = ee_start(slot);
          try {
            fwd = ra_on_request(slot, req);
            break;
          } catch (const Error& e) {
            if (!is_degenerate(e) || slot.outcome.attempts >= kMaxBlindingAttempts) {
              throw;
            }
            slot.ee = ee_reset(std::move(slot.ee));
          }
        }
        Bytes resp = ca_on_forward(slot, fwd);
        auto [index, routed] = ra_on_response(resp);
        ee_finish(slots_[index], routed);
      } catch (const std::exception& e) {
        fail(slot, e);
      }
    }
  }

  struct Envelope {
    enum class Kind { request, forwarded, response, routed, rejected } kind;
    std::uint32_t voter;
    Bytes bytes;
    std::optional<Error> error;
  };

  void run_concurrent() {
    Mailbox<Envelope> ra_box, ca_box, ee_box;
    auto reject = [&](std::uint32_t voter, const Error& e) {
      ee_box.push(Envelope{Envelope::Kind::rejected, voter, {}, e});
    };
    auto reject_any = [&](std::uint32_t voter, const std::exception& e) {
      reject(voter, Error(ErrorCode::BadRequest, e.what()));
    };

    std::thread ra_thread([&] {
      while (auto msg = ra_box.pop()) {
        VoterSlot& slot = slots_[msg->voter];
        try {
          if (msg->kind == Envelope::Kind::request) {
            ca_box.push({Envelope::Kind::forwarded, msg->voter,
                         ra_on_request(slot, msg->bytes), std::nullopt});
          } else {
            auto [index, routed] = ra_on_response(msg->bytes);
            ee_box.push({Envelope::Kind::routed, index, std::move(routed),
                         std::nullopt});
          }
        } catch (const Error& e) {
          reject(msg->voter, e);
        } catch (const std::exception& e) {
          reject_any(msg->voter, e);
        }
      }
    });
    std::thread ca_thread([&] {
      while (auto msg = ca_box.pop()) {
        try {
          ra_box.push({Envelope::Kind::response, msg->voter,
                       ca_on_forward(slots_[msg->voter], msg->bytes), std::nullopt});
        } catch (const Error& e) {
          reject(msg->voter, e);
        } catch (const std::exception& e) {
          reject_any(msg->voter, e);
        }
      }
    });

    std::size_t outstanding = 0;
    auto start = [&](std::uint32_t v) {
      try {
        ra_box.push({Envelope::Kind::request, v, ee_start(slots_[v]), std::nullopt});
        ++outstanding;
      } catch (const std::exception& e) {
        fail(slots_[v], e);
      }
    };
    for (std::uint32_t v = 0; v < slots_.size(); ++v) start(v);
    while (outstanding > 0) {
      auto msg = ee_box.pop();
      --outstanding;
      VoterSlot& slot = slots_[msg->voter];
      if (msg->kind == Envelope::Kind::rejected) {
        if (is_degenerate(*msg->error) &&
            slot.outcome.attempts < kMaxBlindingAttempts) {
          slot.ee = ee_reset(std::move(slot.ee));
          start(msg->voter);
        } else {
          fail(slot, *msg->error);
        }
        continue;
      }
      try {
        ee_finish(slot, msg->bytes);
      } catch (const std::exception& e) {
        fail(slot, e);
      }
    }
    ra_box.close();
    ca_box.close();
    ra_thread.join();
    ca_thread.join();
  }

  // -- tally and audit -----------------------------------------------------

  void tally_and_audit() {
    std::set<Serial> seen;
    for (auto& slot : slots_) {
      VoterOutcome& o = slot.outcome;
      if (!o.success) continue;
      slot.transcript.record(Actor::tally, Direction::received, slot.ballot, "Ballot");
      Ballot ballot = decode<Ballot>(slot.ballot);
      o.ballot_verified = verify_ballot(ballot, ca_.keypair.public_key, cfg_.now) &&
                          seen.insert(ballot.anon_cert.serial).second;

      const EeResult& result = *slot.ee.result;
      const Modulus& order = params_.order();
      U256 sum = order.add(order.add(slot.ee.original.private_key.value(),
                                     slot.r_ra->value()),
                           slot.r_ca->value());
      o.key_invariant =
          sum == result.k.value() &&
          scalar_mul(result.k, params_.generator(), params_) ==
              result.anon_cert.public_key;

      if (!view_scan_meaningful()) continue;
      auto scan = [&](Actor actor, std::string name, ByteView secret,
                      std::vector<std::string>& out) {
        if (slot.transcript.actor_saw(actor, secret)) out.push_back(std::move(name));
      };
      auto r_ca = slot.r_ca->to_bytes();
      auto k = result.k.to_bytes();
      auto big_k = result.anon_cert.public_key.to_bytes();
      scan(Actor::ra, "r_CA", r_ca, o.ra_view_violations);
      scan(Actor::ra, "k", k, o.ra_view_violations);
      scan(Actor::ra, "K", big_k, o.ra_view_violations);
      scan(Actor::ra, "anon_cert_serial", result.anon_cert.serial,
           o.ra_view_violations);
      auto i = slot.ee.original.private_key.to_bytes();
      auto r_ra = slot.r_ra->to_bytes();
      auto big_i = slot.ee.original.public_key.to_bytes();
      scan(Actor::ca, "i", i, o.ca_view_violations);
      scan(Actor::ca, "r_RA", r_ra, o.ca_view_violations);
      scan(Actor::ca, "I", big_i, o.ca_view_violations);
      scan(Actor::ca, "preexisting_cert_serial", slot.ee.preexisting_cert.serial,
           o.ca_view_violations);
    }
  }

  // Toy-sized scalars encode as 31 zero bytes plus one, so a substring scan
  // would match by chance.
  bool view_scan_meaningful() const { return params_.order().bits() >= 128; }

  ScenarioConfig cfg_;
  const CurveParams& params_;
  PresetLabels labels_;
  DeterministicRandom root_;
  Validity validity_;
  RaState ra_;
  CaState ca_;
  KeyPair legacy_{Scalar::zero(curve_params(CurveId::toy)),
                  Point::infinity(CurveId::toy)};
  std::vector<VoterSlot> slots_;
  std::map<std::string, std::uint32_t> index_of_;
};

}  // namespace detail

inline RunReport run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  detail::ScenarioRun run(cfg);
  return run.run();
}

/// Runs the scenario and writes every transcript message as a hex file under
/// `dir/<voter>/<seq>-<actor>-<direction>-<type>.hex`.
inline RunReport run_scenario_with_dump(const ScenarioConfig& cfg,
                                        const std::filesystem::path& dir) {
  cfg.validate();
  detail::ScenarioRun run(cfg);
  RunReport report = run.run();
  for (const auto& slot : run.slots()) {
    std::filesystem::path voter_dir = dir / slot.ee_id;
    std::filesystem::create_directories(voter_dir);
    int seq = 0;
    for (const auto& entry : slot.transcript.entries()) {
      std::string n = std::to_string(++seq);
      std::string name = std::string(n.size() < 2 ? 1 : 0, '0') + n + "-" +
                         std::string(to_string(entry.actor)) + "-" +
                         std::string(to_string(entry.direction)) + "-" +
                         entry.annotation + ".hex";
      std::ofstream(voter_dir / name) << hex_encode(entry.message) << "\n";
    }
  }
  return report;
}

inline nlohmann::json to_json(const RunReport& r, bool include_timing = false) {
  nlohmann::json voters = nlohmann::json::array();
  for (const auto& v : r.voters) {
    voters.push_back({{"index", v.index},
                      {"ee_id", v.ee_id},
                      {"status", v.success ? "issued" : "failed"},
                      {"error", v.error},
                      {"attempts", v.attempts},
                      {"candidate", v.candidate},
                      {"ballot_verified", v.ballot_verified},
                      {"key_invariant", v.key_invariant},
                      {"ra_view_violations", v.ra_view_violations},
                      {"ca_view_violations", v.ca_view_violations},
                      {"request_hash", v.request_hash},
                      {"anon_cert_serial", v.anon_cert_serial},
                      {"formal_public_key", v.formal_public_key}});
  }
  nlohmann::json out = {
      {"config",
       {{"curve", std::string(to_string(r.config.curve))},
        {"num_voters", r.config.num_voters},
        {"rng_seed", r.config.rng_seed},
        {"preset", r.config.preset},
        {"candidates", r.config.candidate_list},
        {"detail_allowlist", r.config.detail_allowlist},
        {"election_id", r.config.election_id},
        {"now", r.config.now}}},
      {"authorities", {{"ra_public", r.ra_public}, {"ca_public", r.ca_public}}},
      {"voters", voters},
      {"tally", r.tally},
      {"summary",
       {{"issued", r.issued},
        {"failed", r.failed},
        {"ballots_verified", r.ballots_verified},
        {"invariant_failures", r.invariant_failures},
        {"view_separation_violations", r.view_separation_violations},
        {"view_checks_applied", r.view_checks_applied},
        {"passed", r.all_passed()}}}};
  if (include_timing) out["timing"] = {{"elapsed_ms", r.elapsed_ms}};
  return out;
}

}  // namespace anoncert

#endif  // ANONCERT_SCENARIO_HPP_
