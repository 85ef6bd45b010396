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

// Exact two-phase simplex with Bland's rule.

#ifndef DBP_LP_HPP_
#define DBP_LP_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "exact_math.hpp"

namespace dbp {

enum class Sense { kMinimize, kMaximize };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* LpStatusName(LpStatus status);

// optimize objective.x subject to
//   eq_matrix x == eq_rhs, le_matrix x <= le_rhs,
//   x_j >= 0 for every j with nonneg[j].
struct LpProblem {
  Sense sense = Sense::kMinimize;
  Vector objective;
  Matrix eq_matrix;
  Vector eq_rhs;
  Matrix le_matrix;
  Vector le_rhs;
  std::vector<bool> nonneg;

  std::size_t num_vars() const { return objective.size(); }

  // Convenience builder: `n` variables, all non-negative, zero objective.
  static LpProblem WithVars(std::size_t n, bool nonnegative = true);
  void AddEq(const Vector& row, const Rational& rhs);
  void AddLe(const Vector& row, const Rational& rhs);
  void AddGe(const Vector& row, const Rational& rhs);
};

// A basic solution. `basis` lists standard-form column indices, one per
// non-redundant equality row. For problems whose variables are all
// non-negative and whose rows are all equalities the standard-form columns
// coincide with the original variables.
struct BasicSolution {
  Vector values;
  std::vector<std::size_t> basis;
};

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;          // objective value, meaningful when optimal
  BasicSolution solution;  // optimum, or feasible point when unbounded
  Vector ray;              // improving direction when unbounded
  Vector farkas;           // one multiplier per eq row then per le row
  std::size_t pivots = 0;
};

LpOutcome SolveLp(const LpProblem& problem);

// Verifies a Farkas certificate: multipliers y with y >= 0 on le rows such
// that the combined row is >= 0 on non-negative variables, == 0 on free
// variables, and the combined right-hand side is < 0.
bool VerifyFarkas(const LpProblem& problem, const Vector& y);

bool IsFeasiblePoint(const LpProblem& problem, const Vector& x);

// An equality system W x = w0 over non-negative variables.
struct EqSystem {
  Matrix matrix;
  Vector rhs;
};

// Phase I only. Returns a basic feasible solution or nullopt.
std::optional<BasicSolution> FindBfs(const EqSystem& system);

// Simplex tableau B^{-1} W | B^{-1} w0 for a basis listed row by row.
struct Tableau {
  Matrix body;
  Vector rhs;
  std::vector<std::size_t> basis;
  bool Feasible() const;
};

// Builds the tableau for `basis`. Throws Error(kInvalidArgument,
// "singular_basis") when the basis columns are dependent.
Tableau ReducedTableau(const EqSystem& system,
                       const std::vector<std::size_t>& basis);

// Pivots on (row, col): `col` enters, the basic variable of `row` leaves.
void Pivot(Tableau& t, std::size_t row, std::size_t col);

// Decides whether {le rows with row `strict_row` strict, eq rows, sign
// constraints} has a solution by maximizing a slack on the strict row.
bool StrictFeasibility(const LpProblem& problem, std::size_t strict_row);

}  // namespace dbp

#endif  // DBP_LP_HPP_
