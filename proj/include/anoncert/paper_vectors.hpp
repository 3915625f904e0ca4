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

#ifndef ANONCERT_PAPER_VECTORS_HPP_
#define ANONCERT_PAPER_VECTORS_HPP_

#include <functional>
#include <string>
#include <vector>

#include "anoncert/curve.hpp"
#include "anoncert/error.hpp"
#include "json.hpp"

namespace anoncert {

/// One published key-expansion chain i -> I, r_RA -> (j, J), r_CA -> (k, K).
/// Points use the "X,Y" hex text form.
struct ExpansionVectors {
  CurveId curve;
  std::string i;
  std::string I;
  std::string r_ra;
  std::string j;
  std::string J;
  std::string r_ca;
  std::string k;
  std::string K;
};

/// Social-platform case study (brainpoolP256r1).
inline ExpansionVectors brainpool_case_study_vectors() {
  return {
      CurveId::brainpoolP256r1,
      "5D98BD1F7985FC560A8963D6709AAC8B01017D02FB14B12CEF168C9662056874",
      "719CE2A5F8D8174418C3B3AA2E9C4F0EE8AF17F3A9E02A0656E03C32EC05383A,"
      "2E98CA241C58A4933AEE7D4A22394D27EFC1C64618686A00519CC5CB4DE1A93D",
      "F407A78C2CFC8586AC1BA3199F7CBEF34F138894586B5992B61BB8B5A99C5EE7",
      "A7A50CD00493D820783EFC5F7293DE0CC3DB8AF39E1E63C8151436C9745970B4",
      "6814044C70048578E6B120480CBA0B81186054403CAE4C67F688F4074AEDF39B,"
      "4969EBCD7400997FBEAF31481DBA738253052A2FF119FE178CF596EFA7AAE156",
      "474B007D2533DF88376824D4F784129F7BD7B01F1B3C7E69826912D4121A12DF",
      "44F4B57187D90DEC714116A3CC94633AB379C06F03F93B3A075F3B1AEF2B2CEC",
      "80C6DE97A41127BAAFBC4F36E4E514514086A3E4B0F86F9729C52A8767616BF3,"
      "5E333A1B7AC00E2C126C48C343A1A314D2853D4FBD559B9453C434C8C1CDE396",
  };
}

/// Citizen-certificate case study (secp256r1).
inline ExpansionVectors secp256r1_case_study_vectors() {
  return {
      CurveId::secp256r1,
      "5D98BD1F7985FC560A8963D6709AAC8B01017D02FB14B12CEF168C9662056874",
      "490D13266EB3E12C28E44C345B345C431D9BFAB5B101D5E0144AB6ECF194D852,"
      "ABC2D769EF6DE7373AD78082BEC46E455A84BAD6CDCDA8FC557438E9AB56ECDD",
      "F649BE0670CD1C8325BF4EE06963C680E25140702DBCBAAA3D59B30D6CF3C727",
      "53E27B26EA5318D83048B2B6D9FE730C266BC2C581B9CD5238B674E0D2960A4A",
      "78BF0F472CD984F8EA7A756A514118652B88224DD344D5D593E03F2AFBCC6FC6,"
      "A4C43CFFC945A1576B290EC63DB8FB31C74EF44F02963C67EB884E025B1A442E",
      "A1754E3C913F9C98B1147DD142E66A3CBE59DD5B53B721C39B0A73BCE4EB1B32",
      "F557C9637B92B570E15D30881CE4DD48E4C5A020D570EF15D3C0E89DB781257C",
      "6FDFDCE25F876BD4B23FBFBFC9E49872944F01926989B5A72A1FD84125FEB428,"
      "8A108A7CBA97CF26FB9768A7599473F5F9AA27CD462280F41FCAC13FF1BA42E3",
  };
}

struct RelationResult {
  std::string relation;
  std::string expected;
  std::string computed;
  bool passed = false;
};

struct CurveVectorReport {
  CurveId curve;
  std::vector<RelationResult> relations;
  // Published inputs that needed adjustment before use, e.g. a blinding
  // value printed without reduction mod n.
  std::vector<std::string> notes;

  bool all_passed() const {
    for (const auto& r : relations) {
      if (!r.passed) return false;
    }
    return !relations.empty();
  }
};

struct VectorReport {
  std::vector<CurveVectorReport> curves;

  bool all_passed() const {
    for (const auto& c : curves) {
      if (!c.all_passed()) return false;
    }
    return !curves.empty();
  }
};

namespace detail {

// Parses a published point without insisting it lies on the curve, so a
// corrupted constant shows up as a failed relation instead of an exception.
inline Point published_point(CurveId curve, const std::string& text) {
  auto sep = text.find(',');
  if (sep == std::string::npos) {
    throw Error(ErrorCode::MalformedEncoding, "point text must be X,Y");
  }
  return Point::unchecked(curve, U256::from_hex(text.substr(0, sep)),
                          U256::from_hex(text.substr(sep + 1)));
}

// Published scalars are reduced mod n; any reduction is recorded so it is
// never silent.
inline Scalar published_scalar(const CurveParams& params, const std::string& name,
                               const std::string& hex,
                               std::vector<std::string>& notes) {
  U256 raw = U256::from_hex(hex);
  U256 reduced = params.order().reduce(raw);
  if (reduced != raw) {
    notes.push_back(name + " = " + hex + " is not below n; reduced mod n to " +
                    reduced.to_hex());
  }
  return Scalar(params, reduced);
}

inline RelationResult check_relation(const std::string& name,
                                     const std::string& expected,
                                     const std::function<std::string()>& compute) {
  RelationResult r{name, expected, {}, false};
  try {
    r.computed = compute();
    r.passed = r.computed == expected;
  } catch (const Error& e) {
    r.computed = std::string("error: ") + e.what();
  }
  return r;
}

}  // namespace detail

/// Checks each published equation on its own, starting from the published
/// inputs of that equation, so one bad constant fails only the relations
/// that mention it.
inline CurveVectorReport verify_expansion_vectors(const ExpansionVectors& v) {
  const CurveParams& params = curve_params(v.curve);
  const Point g = params.generator();
  CurveVectorReport report{v.curve, {}, {}};
  std::vector<std::string> notes;
  const Scalar i = detail::published_scalar(params, "i", v.i, notes);
  const Scalar r_ra = detail::published_scalar(params, "r_RA", v.r_ra, notes);
  const Scalar j = detail::published_scalar(params, "j", v.j, notes);
  const Scalar r_ca = detail::published_scalar(params, "r_CA", v.r_ca, notes);
  const Scalar k = detail::published_scalar(params, "k", v.k, notes);
  report.notes = std::move(notes);
  auto point = [&](const std::string& text) {
    return detail::published_point(v.curve, text);
  };
  report.relations.push_back(detail::check_relation("I = i*G", v.I, [&] {
    return scalar_mul(i, g, params).to_hex();
  }));
  report.relations.push_back(detail::check_relation("J = I + r_RA*G", v.J, [&] {
    return expand_public(point(v.I), r_ra, params).to_hex();
  }));
  report.relations.push_back(detail::check_relation("K = J + r_CA*G", v.K, [&] {
    return expand_public(point(v.J), r_ca, params).to_hex();
  }));
  report.relations.push_back(detail::check_relation("j = i + r_RA mod n", v.j, [&] {
    return expand_private(i, r_ra, params).to_hex();
  }));
  report.relations.push_back(detail::check_relation("k = j + r_CA mod n", v.k, [&] {
    return expand_private(j, r_ca, params).to_hex();
  }));
  report.relations.push_back(detail::check_relation("k*G = K", v.K, [&] {
    return scalar_mul(k, g, params).to_hex();
  }));
  return report;
}

inline VectorReport verify_paper_vectors() {
  return VectorReport{{verify_expansion_vectors(brainpool_case_study_vectors()),
                       verify_expansion_vectors(secp256r1_case_study_vectors())}};
}

inline nlohmann::json to_json(const VectorReport& report) {
  nlohmann::json curves = nlohmann::json::array();
  for (const auto& c : report.curves) {
    nlohmann::json rels = nlohmann::json::array();
    for (const auto& r : c.relations) {
      rels.push_back({{"relation", r.relation},
                      {"expected", r.expected},
                      {"computed", r.computed},
                      {"passed", r.passed}});
    }
    curves.push_back({{"curve", std::string(to_string(c.curve))},
                      {"passed", c.all_passed()},
                      {"relations", rels},
                      {"notes", c.notes}});
  }
  return {{"passed", report.all_passed()}, {"curves", curves}};
}

}  // namespace anoncert

#endif  // ANONCERT_PAPER_VECTORS_HPP_
