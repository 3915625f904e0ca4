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

#ifndef ANONCERT_TOY_ORACLE_HPP_
#define ANONCERT_TOY_ORACLE_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "anoncert/curve.hpp"
#include "anoncert/error.hpp"
#include "json.hpp"

namespace anoncert {

struct OracleCheck {
  std::string name;
  bool passed = false;
  std::uint64_t cases = 0;
  std::string detail;
};

struct OracleReport {
  std::vector<OracleCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return !checks.empty();
  }
};

namespace toy_oracle {

// Brute-force arithmetic on y^2 = x^3 + 2x + 2 over GF(17) with plain ints.
// Shares no code with the Montgomery/Jacobian path it is used to check.
inline constexpr int kP = 17;
inline constexpr int kA = 2;
inline constexpr int kB = 2;

struct TPoint {
  bool inf = true;
  int x = 0;
  int y = 0;

  friend bool operator==(const TPoint&, const TPoint&) = default;
  friend auto operator<=>(const TPoint&, const TPoint&) = default;
};

inline int mod(int v) { return ((v % kP) + kP) % kP; }

inline int inv(int v) {
  for (int c = 1; c < kP; ++c) {
    if (mod(v * c) == 1) return c;
  }
  return 0;
}

inline TPoint add(const TPoint& p, const TPoint& q) {
  if (p.inf) return q;
  if (q.inf) return p;
  if (p.x == q.x && mod(p.y + q.y) == 0) return {};
  int lambda = (p == q) ? mod((3 * p.x * p.x + kA) * inv(2 * p.y))
                        : mod((q.y - p.y) * inv(q.x - p.x));
  int x = mod(lambda * lambda - p.x - q.x);
  return {false, x, mod(lambda * (p.x - x) - p.y)};
}

inline TPoint mul_repeated(int k, const TPoint& p) {
  TPoint acc;
  for (int i = 0; i < k; ++i) acc = add(acc, p);
  return acc;
}

inline std::vector<TPoint> enumerate_group() {
  std::vector<TPoint> pts{TPoint{}};
  for (int x = 0; x < kP; ++x) {
    for (int y = 0; y < kP; ++y) {
      if (mod(y * y) == mod(x * x * x + kA * x + kB)) pts.push_back({false, x, y});
    }
  }
  return pts;
}

inline Point to_point(const TPoint& t) {
  if (t.inf) return Point::infinity(CurveId::toy);
  return Point::from_affine(curve_params(CurveId::toy),
                            U256(static_cast<std::uint64_t>(t.x)),
                            U256(static_cast<std::uint64_t>(t.y)));
}

}  // namespace toy_oracle

/// Exhaustive comparison of the library's curve arithmetic against the
/// brute-force toy-group oracle, plus the distribution of K for fixed J.
inline OracleReport toy_curve_oracle_suite() {
  using namespace toy_oracle;
  const CurveParams& params = curve_params(CurveId::toy);
  const Point g = params.generator();
  const TPoint tg{false, 5, 1};
  const std::vector<TPoint> group = enumerate_group();
  const int order = static_cast<int>(params.n().limbs()[0]);
  OracleReport report;

  auto run = [&report](std::string name, auto&& body) {
    OracleCheck check{std::move(name), true, 0, {}};
    try {
      body(check);
    } catch (const Error& e) {
      check.passed = false;
      check.detail = std::string("unexpected error: ") + e.what();
    }
    report.checks.push_back(std::move(check));
  };
  auto fail = [](OracleCheck& c, const std::string& why) {
    if (c.passed) c.detail = why;
    c.passed = false;
  };

  run("group order", [&](OracleCheck& c) {
    c.cases = group.size();
    int g_order = 1;
    for (TPoint p = tg; !p.inf; p = add(p, tg)) ++g_order;
    if (static_cast<int>(group.size()) != order || g_order != order) {
      fail(c, "enumerated " + std::to_string(group.size()) + " points, G has order " +
                  std::to_string(g_order));
    }
  });

  run("point_add matches oracle", [&](OracleCheck& c) {
    for (const auto& p : group) {
      for (const auto& q : group) {
        ++c.cases;
        Point sum = point_add(to_point(p), to_point(q), params);
        if (sum != to_point(add(p, q)) || !is_on_curve(sum, params)) {
          fail(c, "mismatch at " + to_point(p).to_hex() + " + " + to_point(q).to_hex());
        }
      }
    }
  });

  run("identity and inverse", [&](OracleCheck& c) {
    const Point inf = Point::infinity(CurveId::toy);
    for (const auto& p : group) {
      c.cases += 2;
      Point pp = to_point(p);
      if (point_add(pp, inf, params) != pp || point_add(inf, pp, params) != pp) {
        fail(c, "identity fails at " + pp.to_hex());
      }
      if (!point_add(pp, negate(pp, params), params).is_infinity()) {
        fail(c, "inverse fails at " + pp.to_hex());
      }
    }
  });

  run("commutativity", [&](OracleCheck& c) {
    for (const auto& p : group) {
      for (const auto& q : group) {
        ++c.cases;
        if (point_add(to_point(p), to_point(q), params) !=
            point_add(to_point(q), to_point(p), params)) {
          fail(c, "P + Q != Q + P");
        }
      }
    }
  });

  run("associativity", [&](OracleCheck& c) {
    std::map<std::pair<TPoint, TPoint>, Point> sums;
    for (const auto& p : group) {
      for (const auto& q : group) {
        sums.emplace(std::make_pair(p, q), point_add(to_point(p), to_point(q), params));
      }
    }
    for (const auto& p : group) {
      for (const auto& q : group) {
        for (const auto& r : group) {
          ++c.cases;
          Point left = point_add(sums.at({p, q}), to_point(r), params);
          Point right = point_add(to_point(p), sums.at({q, r}), params);
          if (left != right) fail(c, "(P + Q) + R != P + (Q + R)");
        }
      }
    }
  });

  run("scalar_mul matches repeated addition", [&](OracleCheck& c) {
    for (const auto& p : group) {
      for (int k = 0; k <= order + 1; ++k) {
        ++c.cases;
        Point got = scalar_mul(U256(static_cast<std::uint64_t>(k)), to_point(p), params);
        if (got != to_point(mul_repeated(k, p))) {
          fail(c, std::to_string(k) + " * " + to_point(p).to_hex());
        }
      }
    }
  });

  run("expansion homomorphism", [&](OracleCheck& c) {
    for (int x = 1; x < order; ++x) {
      for (int r = 1; r < order; ++r) {
        ++c.cases;
        Scalar sx(params, U256(static_cast<std::uint64_t>(x)));
        Scalar sr(params, U256(static_cast<std::uint64_t>(r)));
        Point xg = to_point(mul_repeated(x, tg));
        if ((x + r) % order == 0) {
          // The only pairs where expansion must refuse.
          bool priv_rejected = false, pub_rejected = false;
          try {
            expand_private(sx, sr, params);
          } catch (const Error& e) {
            priv_rejected = e.code() == ErrorCode::DegenerateResult;
          }
          try {
            expand_public(xg, sr, params);
          } catch (const Error& e) {
            pub_rejected = e.code() == ErrorCode::DegenerateResult;
          }
          if (!priv_rejected || !pub_rejected) {
            fail(c, "degenerate pair not rejected at x=" + std::to_string(x));
          }
          continue;
        }
        Point lhs = scalar_mul(expand_private(sx, sr, params), g, params);
        Point rhs = expand_public(xg, sr, params);
        if (lhs != rhs || lhs != to_point(mul_repeated(x + r, tg))) {
          fail(c, "x=" + std::to_string(x) + " r=" + std::to_string(r));
        }
      }
    }
  });

  run("fixed-J uniform K", [&](OracleCheck& c) {
    for (const auto& tj : group) {
      if (tj.inf) continue;
      Point j = to_point(tj);
      std::map<std::string, int> hits;
      int infinities = 0;
      for (int r = 1; r < order; ++r) {
        ++c.cases;
        Point k = point_add(j, scalar_mul(U256(static_cast<std::uint64_t>(r)), g, params),
                            params);
        if (k.is_infinity()) ++infinities;
        if (k == j) fail(c, "K equals J");
        ++hits[k.to_hex()];
      }
      bool uniform = static_cast<int>(hits.size()) == order - 1;
      for (const auto& [key, count] : hits) uniform = uniform && count == 1;
      if (!uniform || infinities != 1) {
        fail(c, "K not uniform over n-1 points for J=" + j.to_hex());
      }
    }
  });

  return report;
}

inline nlohmann::json to_json(const OracleReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"cases", c.cases},
                      {"detail", c.detail}});
  }
  return {{"passed", report.all_passed()}, {"checks", checks}};
}

}  // namespace anoncert

#endif  // ANONCERT_TOY_ORACLE_HPP_
