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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "anoncert/scenario.hpp"
#include "anoncert/toy_oracle.hpp"

namespace {

using namespace anoncert;

ScenarioConfig config(CurveId curve, std::uint32_t voters, std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.curve = curve;
  cfg.num_voters = voters;
  cfg.rng_seed = seed;
  return cfg;
}

std::uint32_t tally_sum(const RunReport& r) {
  std::uint32_t sum = 0;
  for (const auto& [candidate, count] : r.tally) sum += count;
  return sum;
}

TEST(Scenario, TenBrainpoolVoters) {
  RunReport r = run_scenario(config(CurveId::brainpoolP256r1, 10, 42));
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.issued, 10u);
  EXPECT_EQ(r.ballots_verified, 10u);
  EXPECT_EQ(tally_sum(r), 10u);
  EXPECT_TRUE(r.view_checks_applied);
  std::set<std::string> serials, keys;
  for (const auto& v : r.voters) {
    EXPECT_TRUE(v.success) << v.ee_id << ": " << v.error;
    EXPECT_TRUE(v.key_invariant);
    EXPECT_TRUE(v.ra_view_violations.empty());
    EXPECT_TRUE(v.ca_view_violations.empty());
    serials.insert(v.anon_cert_serial);
    keys.insert(v.formal_public_key);
  }
  EXPECT_EQ(serials.size(), 10u);
  EXPECT_EQ(keys.size(), 10u);
}

TEST(Scenario, SingleSecpVoter) {
  RunReport r = run_scenario(config(CurveId::secp256r1, 1, 7));
  EXPECT_TRUE(r.all_passed());
  ASSERT_EQ(r.voters.size(), 1u);
  EXPECT_EQ(r.voters[0].ee_id, "voter-0001");
}

TEST(Scenario, ToyCurveSkipsByteScans) {
  RunReport r = run_scenario(config(CurveId::toy, 20, 3));
  EXPECT_FALSE(r.view_checks_applied);
  EXPECT_EQ(r.issued, 20u);
  EXPECT_EQ(r.invariant_failures, 0u);
  // Formal keys on an order-19 group must collide; serials must not.
  std::set<std::string> serials;
  for (const auto& v : r.voters) serials.insert(v.anon_cert_serial);
  EXPECT_EQ(serials.size(), 20u);
}

TEST(Scenario, ReportIsDeterministic) {
  ScenarioConfig cfg = config(CurveId::secp256r1, 4, 99);
  EXPECT_EQ(to_json(run_scenario(cfg)).dump(2), to_json(run_scenario(cfg)).dump(2));
  ScenarioConfig other = cfg;
  other.rng_seed = 100;
  EXPECT_NE(to_json(run_scenario(cfg)).dump(), to_json(run_scenario(other)).dump());
}

TEST(Scenario, TimingOnlyWhenRequested) {
  RunReport r = run_scenario(config(CurveId::toy, 1, 1));
  EXPECT_FALSE(to_json(r).contains("timing"));
  EXPECT_TRUE(to_json(r, true).contains("timing"));
}

TEST(Scenario, ConcurrentMatchesSequential) {
  for (CurveId curve : {CurveId::brainpoolP256r1, CurveId::toy}) {
    ScenarioConfig cfg = config(curve, 6, 11);
    RunReport seq = run_scenario(cfg);
    cfg.concurrent = true;
    RunReport conc = run_scenario(cfg);
    EXPECT_TRUE(conc.all_passed() || curve == CurveId::toy);
    EXPECT_EQ(to_json(seq).dump(), to_json(conc).dump());
  }
}

TEST(Scenario, Presets) {
  EXPECT_EQ(preset_config("social-platform").curve, CurveId::brainpoolP256r1);
  EXPECT_EQ(preset_config("citizen-cert").curve, CurveId::secp256r1);
  EXPECT_THROW(preset_config("nope"), Error);
  EXPECT_NE(preset_labels("social-platform").ca_name, preset_labels("citizen-cert").ca_name);

  ScenarioConfig cfg = preset_config("citizen-cert");
  cfg.num_voters = 2;
  RunReport r = run_scenario(cfg);
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(to_json(r)["config"]["preset"], "citizen-cert");
}

TEST(Scenario, InvalidConfig) {
  ScenarioConfig cfg;
  cfg.num_voters = 0;
  try {
    run_scenario(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
  }
  cfg.num_voters = 1;
  cfg.candidate_list.clear();
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Scenario, CandidatesComeFromConfig) {
  ScenarioConfig cfg = config(CurveId::secp256r1, 5, 8);
  cfg.candidate_list = {"only-choice"};
  RunReport r = run_scenario(cfg);
  ASSERT_EQ(r.tally.size(), 1u);
  EXPECT_EQ(r.tally.at("only-choice"), 5u);
}

TEST(Scenario, AllowlistReachesCa) {
  // Dropping purpose from the allowlist still issues; the run audits the
  // transcripts either way.
  ScenarioConfig cfg = config(CurveId::secp256r1, 2, 8);
  cfg.detail_allowlist = {"election_id"};
  EXPECT_TRUE(run_scenario(cfg).all_passed());
}

TEST(Scenario, DumpWritesTranscriptFiles) {
  auto dir = std::filesystem::temp_directory_path() / "anoncert-dump-test";
  std::filesystem::remove_all(dir);
  RunReport r = run_scenario_with_dump(config(CurveId::secp256r1, 2, 5), dir);
  EXPECT_TRUE(r.all_passed());
  for (const char* voter : {"voter-0001", "voter-0002"}) {
    ASSERT_TRUE(std::filesystem::is_directory(dir / voter));
    std::vector<std::string> names;
    for (const auto& e : std::filesystem::directory_iterator(dir / voter)) {
      names.push_back(e.path().filename().string());
      std::ifstream in(e.path());
      std::string hex;
      in >> hex;
      EXPECT_FALSE(hex.empty());
      EXPECT_NO_THROW(hex_decode(hex));
    }
    EXPECT_GE(names.size(), 6u);
    EXPECT_TRUE(std::any_of(names.begin(), names.end(), [](const std::string& n) {
      return n.rfind("01-EE-sent-", 0) == 0;
    }));
  }
  std::filesystem::remove_all(dir);
}

TEST(ToyOracle, SuitePasses) {
  OracleReport report = toy_curve_oracle_suite();
  for (const auto& c : report.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_TRUE(report.all_passed());
  EXPECT_TRUE(to_json(report)["passed"].get<bool>());
}

}  // namespace
