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

// Bisection on h driven by the subset criterion.

#ifndef DBP_SOLVER_HPP_
#define DBP_SOLVER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "criterion.hpp"
#include "instance.hpp"

namespace dbp {

struct SolveOptions {
  bool skip_validation = false;
  // Shrink the upper end of the interval to min(2^L, M1, M2).
  bool tighten = true;
};

struct Probe {
  Rational h;
  Verdict verdict;
  std::string step;
};

struct SolveResult {
  std::string mode;  // "affine" or "bisection"
  std::optional<Rational> h_star;  // offset-free optimum
  std::optional<Vector> x_star;
  std::optional<Vector> y_star;
  std::optional<Rational> z_check;  // objective at (x*, y*), with offset
  std::vector<Probe> trace;
  std::vector<Discrepancy> discrepancies;
  std::size_t L = 0;
  std::size_t iterations = 0;
  std::size_t iteration_budget = 0;
  Rational lo;
  Rational hi;
};

// Lexicographically smallest y with D y <= d and (sum_k v_k D_k) y =
// sum_k v_k d_k. Throws Error(kDiscrepancy, "infeasible_recovery").
Vector RecoverY(const DbpInstance& inst, const Vector& v);

// Throws Error(kValidation, ...) when validation fails. Internal
// contradictions are returned in `discrepancies` instead.
SolveResult Solve(const DbpInstance& inst, const SolveOptions& options = {});

}  // namespace dbp

#endif  // DBP_SOLVER_HPP_
