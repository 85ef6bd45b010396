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

// Decides whether Y is contained in Y_h = {y : min_x z(x, y) > h} through
// the basic solutions of an equality system W alpha = w0(h), alpha >= 0.

#ifndef DBP_CRITERION_HPP_
#define DBP_CRITERION_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "exact_math.hpp"
#include "instance.hpp"
#include "lp.hpp"

namespace dbp {

// Rows: [A I 0 0; C^T 0 D^T 0; g 0 -d^T 1], right-hand side (a, -e, h).
// Columns: x, slacks of A x <= a, v, and the final column v_{p+1}.
struct WSystem {
  EqSystem sys;
  std::size_t n = 0, q = 0, m = 0, p = 0;

  std::size_t rows() const { return sys.matrix.rows(); }
  std::size_t cols() const { return sys.matrix.cols(); }
  std::size_t last_col() const { return n + q + p; }
  std::size_t v_begin() const { return n + q; }
};

WSystem BuildWSystem(const DbpInstance& inst, const Rational& h);

enum class Verdict { kSubset, kNotSubset };
const char* VerdictName(Verdict v);

struct Discrepancy {
  std::string kind;
  std::string detail;
};

// A basic feasible solution of W with v_{p+1} basic.
struct Certificate {
  Vector alpha;
  std::vector<std::size_t> basis;
  bool repaired = false;  // built by the max-ratio construction
};

bool VerifyCertificate(const WSystem& w, const Certificate& cert);

// Rows with a zero entry in column `col` first, then rows with a negative
// entry; both groups keep their original order. `k` receives the number of
// zero rows.
Tableau ToBlinn21(const Tableau& t, std::size_t col, std::size_t* k);

// Whether z_{i0} is unbounded over the reordered tableau, decided by the
// feasibility of the homogeneous ray system.
bool BoundednessCheck(const Tableau& t, std::size_t k, std::size_t i0,
                      std::size_t last_col);

struct RowLp {
  LpOutcome full;     // max z_{i0} over the whole tableau system
  LpOutcome reduced;  // max z_{i0} over the zero rows only
  std::vector<std::size_t> reduced_cols;  // W column of each reduced var
  Rational t_star;    // optimum of z_{i0}
};

RowLp SolveRowLp(const Tableau& t, std::size_t k, std::size_t i0,
                 std::size_t last_col);

// Point built from the reduced-row optimum with row i0 forced nonbasic.
std::optional<Certificate> ConstructCertificate(const Tableau& t, std::size_t k,
                                                std::size_t i0,
                                                const RowLp& lp,
                                                std::size_t last_col);

// Same point with the entering value set by the largest ratio instead of
// row i0.
std::optional<Certificate> RepairCertificate(const Tableau& t, std::size_t k,
                                             const RowLp& lp,
                                             std::size_t last_col);

struct CriterionOptions {
  // Refuse to run when {A x <= a, C^T x = -e, x >= 0} is consistent.
  bool check_precondition = true;
};

struct CriterionOutcome {
  Verdict verdict = Verdict::kSubset;
  std::string step;
  std::optional<Certificate> certificate;
  std::vector<Discrepancy> discrepancies;
  std::size_t k = 0;              // 1-based start of the negative rows
  std::size_t unbounded_rows = 0;
  std::vector<Rational> t_stars;  // one per negative row when all bounded
};

CriterionOutcome Algorithm1(const DbpInstance& inst, const Rational& h,
                            const CriterionOptions& options = {});

// Optimal solution of min g.x over {A x <= a, C^T x = -e, x >= 0} when that
// system is consistent.
std::optional<LpOutcome> AffineCase(const DbpInstance& inst);

}  // namespace dbp

#endif  // DBP_CRITERION_HPP_
