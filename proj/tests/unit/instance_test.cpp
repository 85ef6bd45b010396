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

#include <algorithm>

#include "doctest.h"
#include "instance.hpp"
#include "oracles.hpp"

using namespace dbp;
using testing::Mat;
using testing::Vec;

namespace {

Rational Q(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

const Matrix kSquareD = Mat({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, 2);
const Vector kSquared = Vec({1, 1, 0, 0});

DbpInstance Tiny() {
  DbpInstance inst;
  inst.n = inst.m = inst.q = 1;
  inst.p = 2;
  inst.C = Mat({{1}}, 1);
  inst.A = Mat({{1}}, 1);
  inst.a = Vec({1});
  inst.g = Vec({-1});
  inst.e = Vec({1});
  inst.D = Mat({{1}, {-1}}, 1);
  inst.d = Vec({1, 0});
  return inst;
}

std::string ValidationKind(const DbpInstance& inst) {
  try {
    ValidateInstance(inst);
  } catch (const Error& err) {
    return err.kind();
  }
  return "";
}

}  // namespace

TEST_CASE("vertex enumeration") {
  CHECK(EnumerateVertices(kSquareD, kSquared) ==
        std::vector<Vector>{Vec({0, 0}), Vec({0, 1}), Vec({1, 0}), Vec({1, 1})});
  const Matrix tri = Mat({{1, 1}, {-1, 0}, {0, -1}}, 2);
  CHECK(EnumerateVertices(tri, Vec({1, 0, 0})) ==
        std::vector<Vector>{Vec({0, 0}), Vec({0, 1}), Vec({1, 0})});
  const Matrix dup = Mat({{1, 1}, {1, 1}, {-1, 0}, {0, -1}}, 2);
  CHECK(EnumerateVertices(dup, Vec({1, 1, 0, 0})).size() == 3);
  const Matrix open = Mat({{-1, 0}, {0, -1}}, 2);
  try {
    EnumerateVertices(open, Vec({0, 0}));
    FAIL("expected unbounded_set");
  } catch (const Error& err) {
    CHECK(err.kind() == "unbounded_set");
  }
  CHECK(EnumerateVertices(Mat({{1}, {-1}}, 1), Vec({-1, 0})).empty());
}

TEST_CASE("vertex enumeration matches the reference on random perfect sets") {
  testing::TestRng rng(3);
  for (int i = 0; i < 50; ++i) {
    const DbpInstance inst = testing::RandomPerfectInstance(rng, 1, rng.Int(1, 3), 1, 3);
    CHECK(EnumerateVertices(inst.D, inst.d) == testing::YVerticesRef(inst));
  }
}

TEST_CASE("instance validation") {
  CHECK(ValidationKind(Tiny()) == "");
  DbpInstance bad = Tiny();
  bad.p = 1;
  bad.D = Mat({{1}}, 1);
  bad.d = Vec({1});
  CHECK(ValidationKind(bad) == "bad_dimensions");
  DbpInstance dims = Tiny();
  dims.g = Vec({1, 2});
  CHECK(ValidationKind(dims) == "bad_dimensions");
  DbpInstance rank;
  rank.n = 1;
  rank.m = 2;
  rank.q = 1;
  rank.p = 3;
  rank.C = Mat({{0, 0}}, 2);
  rank.A = Mat({{1}}, 1);
  rank.a = Vec({1});
  rank.g = Vec({0});
  rank.e = Vec({0, 0});
  rank.D = Mat({{1, 1}, {-1, -1}, {2, 2}}, 2);
  rank.d = Vec({1, 0, 3});
  CHECK(ValidationKind(rank) == "rank_deficient");
  DbpInstance empty = Tiny();
  empty.a = Vec({-1});
  CHECK(ValidationKind(empty) == "infeasible_x");
  DbpInstance open = Tiny();
  open.A = Mat({{-1}}, 1);
  open.a = Vec({0});
  CHECK(ValidationKind(open) == "unbounded_x");
}

TEST_CASE("objective and membership") {
  const DbpInstance inst = Tiny();
  CHECK(inst.CoreObjective(Vec({1}), Vec({1})) == 1);
  CHECK(inst.CoreObjective(Vec({1}), Vec({0})) == -1);
  DbpInstance shifted = inst;
  shifted.z_offset = 5;
  CHECK(shifted.Objective(Vec({1}), Vec({0})) == 4);
  CHECK(inst.InX(Vec({1})));
  CHECK_FALSE(inst.InX(Vec({2})));
  CHECK_FALSE(inst.InX(Vec({-1})));
  CHECK(inst.InY(Vec({0})));
  CHECK_FALSE(inst.InY(Vector{Q(3, 2)}));
  CHECK(inst.IsIntegral());
  shifted.g = Vector{Q(1, 2)};
  CHECK_FALSE(shifted.IsIntegral());
}

TEST_CASE("redundancy classification") {
  CHECK(ClassifyRedundancy(Vec({1, 0}), 2, kSquareD, kSquared) == Redundancy::kStrongly);
  CHECK(ClassifyRedundancy(Vec({1, 0}), 1, kSquareD, kSquared) == Redundancy::kWeakly);
  CHECK(ClassifyRedundancy(Vec({0, 0}), 0, kSquareD, kSquared) == Redundancy::kDegenerate);
  CHECK(ClassifyRedundancy(Vec({0, 0}), -1, kSquareD, kSquared) ==
        Redundancy::kNotRedundant);
  CHECK(ClassifyRedundancy(Vec({1, 0}), Q(1, 2), kSquareD, kSquared) ==
        Redundancy::kNotRedundant);
  CHECK(ClassifyRedundancy(Vec({1, 1}), 2, kSquareD, kSquared) == Redundancy::kWeakly);
  // Unbounded direction: the dual LP is infeasible.
  CHECK(ClassifyRedundancy(Vec({1}), 100, Mat({{-1}}, 1), Vec({0})) ==
        Redundancy::kNotRedundant);
  CHECK(std::string(RedundancyName(Redundancy::kWeakly)) == "weakly");
}

TEST_CASE("perfect polytope checks") {
  CHECK(CheckPerfect(kSquareD, kSquared).is_perfect);
  CHECK(CheckPerfect(kSquareD, kSquared).vertices.size() == 4);

  // x >= 0, y >= 0, x + y <= 3, x <= 2, y <= 2.
  const Matrix pent = Mat({{-1, 0}, {0, -1}, {1, 1}, {1, 0}, {0, 1}}, 2);
  const PerfectReport rep = CheckPerfect(pent, Vec({0, 0, 3, 2, 2}));
  CHECK_FALSE(rep.is_perfect);
  const auto b = std::find_if(
      rep.violations.begin(), rep.violations.end(), [](const PerfectViolation& v) {
        return v.condition == 'b' && v.rows == std::vector<std::size_t>{3, 4};
      });
  REQUIRE(b != rep.violations.end());
  CHECK(rep.violations.size() == 3);
  REQUIRE(b->point.has_value());
  CHECK(*b->point == Vec({2, 2}));

  const Matrix tri = Mat({{1, 1}, {-1, 0}, {0, -1}, {1, 1}}, 2);
  const PerfectReport dup = CheckPerfect(tri, Vec({1, 0, 0, 1}));
  CHECK_FALSE(dup.is_perfect);
  CHECK(dup.redundant_rows == std::vector<std::size_t>{0, 3});
  CHECK(dup.violations.front().condition == 'a');

  // Square pyramid apex touches four facets.
  const Matrix pyr = Mat({{-1, 0, 0}, {0, -1, 0}, {1, 0, 1}, {0, 1, 1}, {0, 0, -1}}, 3);
  const PerfectReport deg = CheckPerfect(pyr, Vec({0, 0, 2, 2, 0}));
  CHECK_FALSE(deg.is_perfect);

  try {
    CheckPerfect(Mat({{1, 1}, {-1, -1}}, 2), Vec({1, 0}));
    FAIL("expected rank_deficient");
  } catch (const Error& err) {
    CHECK(err.kind() == "rank_deficient");
  }
}

TEST_CASE("symmetric cones at distinct vertices are disjoint") {
  testing::TestRng rng(5);
  std::size_t pairs = 0;
  for (int i = 0; i < 30; ++i) {
    const DbpInstance inst = testing::RandomPerfectInstance(rng, 1, rng.Int(1, 3), 1, 3);
    REQUIRE(CheckPerfect(inst.D, inst.d).is_perfect);
    const auto verts = EnumerateVertices(inst.D, inst.d);
    auto tight = [&](const Vector& y) {
      std::vector<std::size_t> rows;
      for (std::size_t k = 0; k < inst.p; ++k)
        if (Dot(inst.D.Row(k), y) == inst.d[k]) rows.push_back(k);
      return rows;
    };
    for (std::size_t r = 0; r < verts.size(); ++r)
      for (std::size_t k = r + 1; k < verts.size(); ++k) {
        LpProblem lp = LpProblem::WithVars(inst.m, false);
        for (const auto& y : {verts[r], verts[k]})
          for (std::size_t row : tight(y)) lp.AddGe(inst.D.Row(row), inst.d[row]);
        CHECK(SolveLp(lp).status == LpStatus::kInfeasible);
        ++pairs;
      }
  }
  CHECK(pairs > 0);
}

TEST_CASE("encoding length") {
  DbpInstance one = Tiny();
  one.D = Mat({{1}, {-1}}, 1);
  one.d = Vec({1, 0});
  // L1 = 1 + 1 + ceil(log2(1*2 + 1)) = 4, L2 = 1 + 1 + 1 + 0 + ceil(log2(2*2 + 1)) = 6,
  // coupling (1 + 1 + 1) * (1 + 1) = 6.
  CHECK(ComputeL(one) == 16);
  CHECK(ComputeL(one) == testing::ReferenceL(one));

  testing::TestRng rng(9);
  for (int i = 0; i < 50; ++i) {
    const DbpInstance inst =
        testing::RandomPerfectInstance(rng, rng.Int(1, 3), rng.Int(1, 3), rng.Int(1, 3), 5);
    CHECK(ComputeL(inst) == testing::ReferenceL(inst));
    DbpInstance twice = inst;
    for (std::size_t i2 = 0; i2 < twice.q; ++i2) {
      twice.a[i2] *= 2;
      for (std::size_t j = 0; j < twice.n; ++j) twice.A(i2, j) *= 2;
    }
    for (std::size_t k = 0; k < twice.p; ++k) {
      twice.d[k] *= 2;
      for (std::size_t j = 0; j < twice.m; ++j) twice.D(k, j) *= 2;
    }
    CHECK(ComputeL(twice) > ComputeL(inst));
  }

  DbpInstance flat = Tiny();
  flat.C = Mat({{0}}, 1);
  flat.g = Vec({0});
  flat.e = Vec({0});
  DbpInstance unit = flat;
  unit.g = Vec({1});
  // H = 0 leaves qm + q + m = 3; H = 1 doubles it.
  CHECK(ComputeL(unit) - ComputeL(flat) == 3);

  DbpInstance frac = Tiny();
  frac.a = Vector{Q(1, 2)};
  try {
    ComputeL(frac);
    FAIL("expected non_integer_instance");
  } catch (const Error& err) {
    CHECK(err.kind() == "non_integer_instance");
  }
}

TEST_CASE("minimax bounds") {
  DbpInstance zero = Tiny();
  zero.C = Mat({{0}}, 1);
  zero.g = Vec({0});
  zero.e = Vec({0});
  const MinimaxBounds z = ComputeMinimaxBounds(zero);
  CHECK(z.m1 == 0);
  CHECK(z.m2 == 0);

  // C = 0 separates: min g.x over X plus max e.y over Y.
  DbpInstance sep = Tiny();
  sep.C = Mat({{0}}, 1);
  sep.g = Vec({-2});
  sep.e = Vec({3});
  const MinimaxBounds s = ComputeMinimaxBounds(sep);
  CHECK(s.m1 == -2 + 3);
  CHECK(s.m2 == 0);

  testing::TestRng rng(21);
  for (int i = 0; i < 60; ++i) {
    const DbpInstance inst =
        testing::RandomPerfectInstance(rng, rng.Int(1, 2), rng.Int(1, 2), rng.Int(1, 2), 3);
    const MinimaxBounds got = ComputeMinimaxBounds(inst);
    const MinimaxBounds want = testing::EpigraphMinimax(inst);
    CAPTURE(i);
    CHECK(got.m1 == want.m1);
    CHECK(got.m2 == want.m2);
    // Both bound the optimum from above.
    CHECK(got.m1 >= testing::PairOracle(inst));
    CHECK(got.m2 >= testing::PairOracle(inst));
  }
}
