// Copyright 2026 The dbp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "io.hpp"
#include "oracle.hpp"
#include "oracles.hpp"
#include "reductions.hpp"
#include "solver.hpp"

using namespace dbp;
using testing::Mat;
using testing::Vec;

namespace {

std::string ReadData(const std::string& name) {
  std::ifstream in(std::string(DBP_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool HasKind(const SolveResult& res, const std::string& kind) {
  for (const auto& d : res.discrepancies)
    if (d.kind == kind) return true;
  return false;
}

DbpInstance AffineExample() {
  DbpInstance inst;
  inst.n = inst.m = inst.q = 1;
  inst.p = 2;
  inst.C = Mat({{-1}}, 1);
  inst.A = Mat({{1}}, 1);
  inst.a = Vec({2});
  inst.g = Vec({1});
  inst.e = Vec({1});
  inst.D = Mat({{1}, {-1}}, 1);
  inst.d = Vec({1, 0});
  return inst;
}

}  // namespace

TEST_CASE("cube instance") {
  const DbpInstance inst = ParseInstance(ReadData("cube1.json"));
  const SolveResult res = Solve(inst);
  CHECK(res.mode == "bisection");
  REQUIRE(res.h_star);
  CHECK(*res.h_star == -1);
  CHECK(*res.x_star == Vec({1}));
  CHECK(*res.y_star == Vec({0}));
  CHECK(*res.z_check == -1);
  CHECK(res.discrepancies.empty());
  CHECK(res.iterations <= res.iteration_budget);
  CHECK(res.iteration_budget == 3 * res.L + 3);
}

TEST_CASE("affine shortcut is refuted and bisection recovers") {
  const SolveResult res = Solve(AffineExample());
  CHECK(HasKind(res, "affine_refuted"));
  REQUIRE(res.h_star);
  CHECK(*res.h_star == 0);
  CHECK(*res.z_check == 0);
  CHECK(res.hi <= 1);
}

TEST_CASE("boolean reduction") {
  BooleanSystem bs;
  bs.n = 1;
  bs.A = Mat({{2}}, 1);
  bs.a = Vec({1});
  const DbpInstance inst = ReduceBooleanFeasibility(bs);
  const SolveResult res = Solve(inst);
  CHECK(HasKind(res, "affine_refuted"));
  REQUIRE(res.h_star);
  CHECK(*res.h_star == OracleValue(inst).z_core);
  CHECK(*res.z_check == 0);
  REQUIRE(res.x_star);
  CHECK(ExtractBoolean(*res.x_star));
}

TEST_CASE("zero bilinear term takes the affine path or bisects to the same value") {
  DbpInstance inst = AffineExample();
  inst.C = Mat({{0}}, 1);
  inst.e = Vec({0});
  inst.g = Vec({-1});
  const SolveResult res = Solve(inst);
  REQUIRE(res.h_star);
  CHECK(*res.h_star == -2);
  CHECK(*res.x_star == Vec({2}));
}

TEST_CASE("y recovery") {
  DbpInstance inst;
  inst.n = 1;
  inst.m = 2;
  inst.q = 1;
  inst.p = 4;
  inst.C = Mat({{1, 1}}, 2);
  inst.A = Mat({{1}}, 1);
  inst.a = Vec({1});
  inst.g = Vec({0});
  inst.e = Vec({0, 0});
  inst.D = Mat({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, 2);
  inst.d = Vec({1, 1, 0, 0});
  CHECK(RecoverY(inst, Vec({0, 0, 0, 0})) == Vec({0, 0}));
  // v selects the face y1 = 1.
  CHECK(RecoverY(inst, Vec({1, 0, 0, 0})) == Vec({1, 0}));
  CHECK(RecoverY(inst, Vec({1, 1, 0, 0})) == Vec({1, 1}));
  CHECK(RecoverY(inst, Vec({0, 0, 0, 2})) == Vec({0, 0}));
}

TEST_CASE("solve rejects a non-perfect Y") {
  DbpInstance inst = AffineExample();
  inst.p = 3;
  inst.D = Mat({{1}, {-1}, {1}}, 1);
  inst.d = Vec({1, 0, 1});
  try {
    Solve(inst);
    FAIL("expected not_perfect");
  } catch (const Error& err) {
    CHECK(err.kind() == "not_perfect");
  }
}

TEST_CASE("random perfect instances") {
  testing::TestRng rng(17);
  int exact = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const DbpInstance inst = testing::RandomPerfectInstance(
        rng, static_cast<std::size_t>(rng.Int(1, 2)),
        static_cast<std::size_t>(rng.Int(1, 2)), static_cast<std::size_t>(rng.Int(1, 2)), 3);
    const SolveResult res = Solve(inst);
    CAPTURE(trial);
    CHECK(res.L == testing::ReferenceL(inst));
    CHECK(res.iterations <= res.iteration_budget);
    // Each halving keeps Subset probes below NotSubset probes.
    std::optional<Rational> max_subset, min_not;
    for (const Probe& pr : res.trace) {
      if (pr.verdict == Verdict::kSubset) {
        if (!max_subset || pr.h > *max_subset) max_subset = pr.h;
      } else if (!min_not || pr.h < *min_not) {
        min_not = pr.h;
      }
    }
    if (max_subset && min_not) CHECK(*max_subset < *min_not);
    if (!res.h_star) continue;
    const Integer bound = Pow2(res.L);
    CHECK(abs(res.h_star->get_num()) <= bound * bound);
    CHECK(res.h_star->get_den() <= bound);
    // The recovered point is attained, so it never undercuts the optimum.
    // An unbounded-row Subset verdict below the optimum can leave it above.
    const Rational z = testing::PairOracle(inst);
    CHECK(*res.h_star + inst.z_offset >= z);
    if (res.z_check) CHECK(*res.z_check >= z);
    if (*res.h_star + inst.z_offset == z) ++exact;
  }
  CHECK(exact >= 30);
}
