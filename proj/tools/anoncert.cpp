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

// Command-line harness: golden vectors, end-to-end demo, key generation and
// the toy-curve oracle suite.
//
// Exit codes: 0 success, 1 check or vector failure, 2 usage error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "anoncert.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

int run_vectors(bool json) {
  anoncert::VectorReport report = anoncert::verify_paper_vectors();
  if (json) {
    std::cout << anoncert::to_json(report).dump(2) << "\n";
  } else {
    for (const auto& curve : report.curves) {
      std::cout << anoncert::to_string(curve.curve) << "\n";
      for (const auto& r : curve.relations) {
        std::cout << "  " << (r.passed ? "ok  " : "FAIL") << " " << r.relation << "\n";
        if (!r.passed) {
          std::cout << "       expected " << r.expected << "\n"
                    << "       computed " << r.computed << "\n";
        }
      }
      for (const auto& note : curve.notes) std::cout << "  note: " << note << "\n";
    }
    std::cout << (report.all_passed() ? "all relations hold" : "vector mismatch")
              << "\n";
  }
  return report.all_passed() ? kExitOk : kExitFailure;
}

int run_oracle(bool json) {
  anoncert::OracleReport report = anoncert::toy_curve_oracle_suite();
  if (json) {
    std::cout << anoncert::to_json(report).dump(2) << "\n";
  } else {
    for (const auto& c : report.checks) {
      std::cout << (c.passed ? "ok   " : "FAIL ") << c.name << " (" << c.cases
                << " cases)";
      if (!c.detail.empty()) std::cout << ": " << c.detail;
      std::cout << "\n";
    }
  }
  return report.all_passed() ? kExitOk : kExitFailure;
}

struct DemoOptions {
  std::optional<std::string> curve;
  std::uint32_t voters = 10;
  std::uint64_t seed = 42;
  std::optional<std::string> preset;
  bool json = false;
  bool concurrent = false;
  bool timing = false;
  std::string dump_dir;
};

int run_demo(const DemoOptions& opt) {
  anoncert::ScenarioConfig cfg;
  if (opt.preset) cfg = anoncert::preset_config(*opt.preset);
  if (opt.curve) {
    anoncert::CurveId id = anoncert::parse_curve_id(*opt.curve);
    if (opt.preset && id != cfg.curve) {
      throw anoncert::Error(anoncert::ErrorCode::InvalidConfig,
                            "preset " + *opt.preset + " uses curve " +
                                std::string(anoncert::to_string(cfg.curve)));
    }
    cfg.curve = id;
  }
  cfg.num_voters = opt.voters;
  cfg.rng_seed = opt.seed;
  cfg.concurrent = opt.concurrent;

  anoncert::RunReport report =
      opt.dump_dir.empty()
          ? anoncert::run_scenario(cfg)
          : anoncert::run_scenario_with_dump(cfg, opt.dump_dir);

  if (opt.json) {
    std::cout << anoncert::to_json(report, opt.timing).dump(2) << "\n";
  } else {
    std::cout << "curve            " << anoncert::to_string(cfg.curve) << "\n"
              << "voters           " << report.voters.size() << "\n"
              << "issued           " << report.issued << "\n"
              << "failed           " << report.failed << "\n"
              << "ballots verified " << report.ballots_verified << "\n"
              << "key invariant    "
              << (report.invariant_failures == 0 ? "holds" : "VIOLATED") << "\n"
              << "view separation  ";
    if (report.view_checks_applied) {
      std::cout << report.view_separation_violations << " violations\n";
    } else {
      std::cout << "not applicable on this curve\n";
    }
    for (const auto& [candidate, votes] : report.tally) {
      std::cout << "  " << candidate << ": " << votes << "\n";
    }
    for (const auto& v : report.voters) {
      if (!v.success) std::cout << v.ee_id << " failed: " << v.error << "\n";
    }
    std::cout << "elapsed          " << report.elapsed_ms << " ms\n";
  }
  return report.all_passed() ? kExitOk : kExitFailure;
}

int run_keygen(const std::string& curve, std::optional<std::uint64_t> seed,
               bool json) {
  const anoncert::CurveParams& params =
      anoncert::curve_params(anoncert::parse_curve_id(curve));
  anoncert::KeyPair kp = [&] {
    if (seed) {
      anoncert::DeterministicRandom rng(*seed, "anoncert-keygen");
      return anoncert::generate_keypair(params, rng);
    }
    anoncert::SystemRandom rng;
    return anoncert::generate_keypair(params, rng);
  }();
  if (json) {
    nlohmann::json out = {{"curve", std::string(params.name())},
                          {"private_key", kp.private_key.to_hex()},
                          {"public_key", anoncert::to_json(kp.public_key)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "curve       " << params.name() << "\n"
              << "private key " << kp.private_key.to_hex() << "\n"
              << "public key  " << kp.public_key.to_hex() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anonymous certificate issuance via additive key expansion"};
  app.require_subcommand(1);

  bool json = false;

  auto* vectors = app.add_subcommand("vectors", "Check the published expansion chains");
  vectors->add_flag("--json", json, "Emit a JSON report");

  auto* oracle = app.add_subcommand("oracle", "Run the exhaustive toy-curve oracle suite");
  oracle->add_flag("--json", json, "Emit a JSON report");

  DemoOptions demo_opt;
  auto* demo = app.add_subcommand("demo", "Run an end-to-end issuance and voting scenario");
  demo->add_option("--curve", demo_opt.curve, "brainpoolP256r1, secp256r1 or toy");
  demo->add_option("--voters", demo_opt.voters, "Number of voters")
      ->check(CLI::Range(1u, 1000000u));
  demo->add_option("--seed", demo_opt.seed, "Scenario RNG seed");
  demo->add_option("--preset", demo_opt.preset, "Case-study preset")
      ->check(CLI::IsMember({"social-platform", "citizen-cert"}));
  demo->add_flag("--json", demo_opt.json, "Emit a JSON report");
  demo->add_flag("--concurrent", demo_opt.concurrent,
                 "Run RA and CA on their own threads");
  demo->add_flag("--timing", demo_opt.timing, "Include wall-clock time in JSON");
  demo->add_option("--dump-dir", demo_opt.dump_dir,
                   "Write every transcript message as hex under this directory");

  std::string keygen_curve;
  std::optional<std::uint64_t> keygen_seed;
  auto* keygen = app.add_subcommand("keygen", "Generate a key pair");
  keygen->add_option("--curve", keygen_curve, "brainpoolP256r1, secp256r1 or toy")
      ->required();
  keygen->add_option("--seed", keygen_seed, "Deterministic seed (default: system RNG)");
  keygen->add_flag("--json", json, "Emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*vectors) return run_vectors(json);
    if (*oracle) return run_oracle(json);
    if (*demo) return run_demo(demo_opt);
    if (*keygen) return run_keygen(keygen_curve, keygen_seed, json);
  } catch (const anoncert::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == anoncert::ErrorCode::InvalidConfig ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
