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

#ifndef DBP_INSTANCE_HPP_
#define DBP_INSTANCE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "exact_math.hpp"
#include "lp.hpp"

namespace dbp {

// min over x in X, y in Y of  x^T C y + g x + e y + z_offset
// with X = {x >= 0 : A x <= a} and Y = {y : D y <= d}.
struct DbpInstance {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t q = 0;
  std::size_t p = 0;
  Matrix C;  // n x m
  Matrix A;  // q x n
  Vector a;  // q
  Vector g;  // n
  Vector e;  // m
  Matrix D;  // p x m
  Vector d;  // p
  Rational z_offset = 0;

  // x^T C y + g x + e y, without the offset.
  Rational CoreObjective(const Vector& x, const Vector& y) const;
  Rational Objective(const Vector& x, const Vector& y) const {
    return CoreObjective(x, y) + z_offset;
  }
  bool InX(const Vector& x) const;
  bool InY(const Vector& y) const;
  bool IsIntegral() const;
};

// Dimension checks, m < p, rank D == m, X non-empty and bounded.
// Throws Error(kValidation, ...) naming the first violated condition.
void ValidateInstance(const DbpInstance& inst);

// LP over X with objective c.x.
LpProblem XProblem(const DbpInstance& inst, const Vector& c,
                   Sense sense = Sense::kMinimize);
// LP over Y (free variables) with objective c.y.
LpProblem YProblem(const Matrix& D, const Vector& d, const Vector& c,
                   Sense sense);

// Vertices of {y : D y <= d} by basic-subsystem enumeration, deduplicated
// and sorted lexicographically. Throws Error(kValidation, "unbounded_set")
// for a non-empty unbounded set and Error(kValidation, "too_many_subsets")
// when C(p, m) exceeds `subset_cap`.
std::vector<Vector> EnumerateVertices(const Matrix& D, const Vector& d,
                                      std::size_t subset_cap = 1'000'000);

enum class Redundancy { kNotRedundant, kWeakly, kStrongly, kDegenerate };
const char* RedundancyName(Redundancy r);

// Classifies s.y <= s0 against the consistent system D y <= d.
Redundancy ClassifyRedundancy(const Vector& s, const Rational& s0,
                              const Matrix& D, const Vector& d);

struct PerfectViolation {
  char condition = 'a';  // 'a', 'b' or 'c'
  std::string reason;
  std::vector<std::size_t> rows;  // offending rows or subsystem
  std::optional<Vector> point;
};

struct PerfectReport {
  bool is_perfect = false;
  std::vector<PerfectViolation> violations;
  std::vector<std::size_t> redundant_rows;
  std::vector<Vector> vertices;
};

// Throws Error(kValidation, "rank_deficient") when rank D < m.
PerfectReport CheckPerfect(const Matrix& D, const Vector& d);

// Encoding-length bound L of the instance. Throws
// Error(kValidation, "non_integer_instance") for rational data.
std::size_t ComputeL(const DbpInstance& inst);

struct MinimaxBounds {
  Rational m1;  // min_x max_y
  Rational m2;  // max_x min_y
};

// Both bounds exclude z_offset.
MinimaxBounds ComputeMinimaxBounds(const DbpInstance& inst);

}  // namespace dbp

#endif  // DBP_INSTANCE_HPP_
