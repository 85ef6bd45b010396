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

// Reductions of boolean feasibility, boolean linear programming and
// piecewise-linear concave minimization to disjoint bilinear programs.

#ifndef DBP_REDUCTIONS_HPP_
#define DBP_REDUCTIONS_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "exact_math.hpp"
#include "instance.hpp"

namespace dbp {

// Find x in {0,1}^n with A x <= a.
struct BooleanSystem {
  std::size_t n = 0;
  Matrix A;  // q x n, q may be zero
  Vector a;
};

// A boolean system extended by the rows x_j <= 1.
DbpInstance ReduceBooleanFeasibility(const BooleanSystem& bs);

// Encoding length of (c, A, a) used to size the penalty weight.
std::size_t BooleanEncodingLength(const Vector& c, const BooleanSystem& bs);

// Smallest power of two that is at least n * 2^(3L + 1).
Integer BigM(const Vector& c, const BooleanSystem& bs);

// min c.x over boolean solutions of bs, penalized with weight M.
DbpInstance ReduceBooleanLpBigM(const Vector& c, const BooleanSystem& bs);

// Bisection on the objective level t of min c.x over boolean solutions.
// Every probe is a boolean feasibility instance with the extra row
// c.x <= t.
struct BisectionPlan {
  Vector c;
  BooleanSystem base;
  Integer t_lo;  // -n H
  Integer t_hi;  // n H

  DbpInstance InstanceFor(const Integer& t) const;
  // Runs the integer bisection with `feasible_at(t)` deciding whether the
  // level-t instance has optimum zero. Returns the optimal level, or nullopt
  // when even t_hi is infeasible. `probes` receives every level tried.
  std::optional<Integer> Run(const std::function<bool(const DbpInstance&)>&
                                 feasible_at,
                             std::vector<Integer>* probes = nullptr) const;
};

BisectionPlan PlanBooleanBisection(const Vector& c, const BooleanSystem& bs);

// One concave piece: c.x + c0.
struct LinearPiece {
  Vector c;
  Rational c0;
};

// min over X of sum_j min_k (c^{jk} x + c0^{jk}).
struct PlcpProblem {
  std::size_t n = 0;
  Matrix A;
  Vector a;
  std::vector<std::vector<LinearPiece>> groups;
};

DbpInstance ReducePlcp(const PlcpProblem& pp);

// Value of the PLCP objective at x.
Rational PlcpObjective(const PlcpProblem& pp, const Vector& x);

// Returns the boolean vector when every coordinate is 0 or 1.
std::optional<std::vector<bool>> ExtractBoolean(const Vector& x);

}  // namespace dbp

#endif  // DBP_REDUCTIONS_HPP_
