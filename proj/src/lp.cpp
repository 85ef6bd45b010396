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

#include "lp.hpp"

#include <utility>

namespace dbp {

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

LpProblem LpProblem::WithVars(std::size_t n, bool nonnegative) {
  LpProblem p;
  p.objective.assign(n, Rational(0));
  p.eq_matrix = Matrix(0, n);
  p.le_matrix = Matrix(0, n);
  p.nonneg.assign(n, nonnegative);
  return p;
}

void LpProblem::AddEq(const Vector& row, const Rational& rhs) {
  eq_matrix.AppendRow(row);
  eq_rhs.push_back(rhs);
}

void LpProblem::AddLe(const Vector& row, const Rational& rhs) {
  le_matrix.AppendRow(row);
  le_rhs.push_back(rhs);
}

void LpProblem::AddGe(const Vector& row, const Rational& rhs) {
  Vector neg(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) neg[j] = -row[j];
  AddLe(neg, -rhs);
}

namespace {

constexpr std::size_t kPivotGuard = 50'000'000;

// Tableau simplex over min c.x, A x = b, x >= 0 with b >= 0. Columns
// [0, n) are structural, [n, n + m) artificial, and the last column holds
// the right-hand side.
class Simplex {
 public:
  Simplex(const Matrix& a, const Vector& b) : m_(a.rows()), n_(a.cols()) {
    rows_.assign(m_, Vector(n_ + m_ + 1, Rational(0)));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = a(i, j);
      rows_[i][n_ + i] = 1;
      rows_[i][Rhs()] = b[i];
    }
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
  }

  // Returns true when feasible. Otherwise `farkas` receives y with
  // y.A >= 0 and y.b < 0.
  bool PhaseOne(Vector* farkas) {
    cost_.assign(n_ + m_ + 1, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) cost_[j] -= rows_[i][j];
      cost_[Rhs()] -= rows_[i][Rhs()];
    }
    Run(n_ + m_);
    if (sgn(cost_[Rhs()]) != 0) {
      farkas->assign(m_, Rational(0));
      for (std::size_t i = 0; i < m_; ++i) (*farkas)[i] = cost_[n_ + i] - 1;
      return false;
    }
    DriveOutArtificials();
    return true;
  }

  // Returns false when unbounded; `ray` then holds an improving direction.
  bool PhaseTwo(const Vector& c, Vector* ray) {
    cost_.assign(n_ + m_ + 1, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = c[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = c[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= Rhs(); ++j) {
        if (j >= n_ && j < Rhs()) continue;
        cost_[j] -= cb * rows_[i][j];
      }
    }
    const auto blocked = Run(n_);
    if (!blocked) return true;
    ray->assign(n_, Rational(0));
    (*ray)[*blocked] = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      (*ray)[basis_[i]] = -rows_[i][*blocked];
    return false;
  }

  Vector Values() const {
    Vector x(n_, Rational(0));
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (basis_[i] < n_) x[basis_[i]] = rows_[i][Rhs()];
    return x;
  }

  const std::vector<std::size_t>& basis() const { return basis_; }
  std::size_t pivots() const { return pivots_; }

 private:
  std::size_t Rhs() const { return n_ + m_; }

  // Bland's rule over columns [0, limit). Returns the entering column of
  // an unbounded step, or nullopt at optimality.
  std::optional<std::size_t> Run(std::size_t limit) {
    while (true) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (sgn(cost_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return std::nullopt;
      std::size_t leave = rows_.size();
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (sgn(rows_[i][enter]) <= 0) continue;
        Rational ratio = rows_[i][Rhs()] / rows_[i][enter];
        if (leave == rows_.size() || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == rows_.size()) return enter;
      DoPivot(leave, enter);
    }
  }

  void DoPivot(std::size_t r, std::size_t c) {
    if (++pivots_ > kPivotGuard) {
      throw Error(ErrorCode::kInternal, "pivot_budget",
                  "simplex exceeded its pivot budget");
    }
    Vector& pr = rows_[r];
    const Rational inv = 1 / pr[c];
    for (auto& v : pr)
      if (sgn(v) != 0) v *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r) continue;
      Eliminate(rows_[i], pr, c);
    }
    Eliminate(cost_, pr, c);
    basis_[r] = c;
  }

  static void Eliminate(Vector& row, const Vector& pr, std::size_t c) {
    if (sgn(row[c]) == 0) return;
    const Rational f = row[c];
    for (std::size_t j = 0; j < row.size(); ++j)
      if (sgn(pr[j]) != 0) row[j] -= f * pr[j];
  }

  void DriveOutArtificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < n_) {
        ++i;
        continue;
      }
      std::size_t col = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (sgn(rows_[i][j]) != 0) {
          col = j;
          break;
        }
      }
      if (col < n_) {
        DoPivot(i, col);
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<Vector> rows_;
  Vector cost_;
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
};

// Column of the standard form: original variable (with sign) or slack.
struct StdColumn {
  std::size_t var;
  int sign;  // +1, -1 for variables; 0 for a slack
};

struct StandardForm {
  Matrix a;
  Vector b;
  Vector c;
  std::vector<int> row_sign;
  std::vector<StdColumn> columns;
};

StandardForm ToStandardForm(const LpProblem& p) {
  const std::size_t nv = p.num_vars();
  const std::size_t me = p.eq_matrix.rows();
  const std::size_t ml = p.le_matrix.rows();
  StandardForm sf;
  for (std::size_t j = 0; j < nv; ++j) {
    sf.columns.push_back({j, 1});
    if (!p.nonneg[j]) sf.columns.push_back({j, -1});
  }
  const std::size_t nstruct = sf.columns.size();
  for (std::size_t i = 0; i < ml; ++i) sf.columns.push_back({i, 0});
  const std::size_t ncols = sf.columns.size();
  sf.a = Matrix(me + ml, ncols);
  sf.b.assign(me + ml, Rational(0));
  sf.c.assign(ncols, Rational(0));
  sf.row_sign.assign(me + ml, 1);
  const Rational dir = p.sense == Sense::kMaximize ? -1 : 1;
  for (std::size_t k = 0; k < nstruct; ++k) {
    const auto& col = sf.columns[k];
    sf.c[k] = dir * p.objective[col.var] * col.sign;
    for (std::size_t i = 0; i < me; ++i)
      sf.a(i, k) = p.eq_matrix(i, col.var) * col.sign;
    for (std::size_t i = 0; i < ml; ++i)
      sf.a(me + i, k) = p.le_matrix(i, col.var) * col.sign;
  }
  for (std::size_t i = 0; i < ml; ++i) sf.a(me + i, nstruct + i) = 1;
  for (std::size_t i = 0; i < me; ++i) sf.b[i] = p.eq_rhs[i];
  for (std::size_t i = 0; i < ml; ++i) sf.b[me + i] = p.le_rhs[i];
  for (std::size_t i = 0; i < me + ml; ++i) {
    if (sgn(sf.b[i]) < 0) {
      sf.row_sign[i] = -1;
      sf.b[i] = -sf.b[i];
      for (std::size_t k = 0; k < ncols; ++k) sf.a(i, k) = -sf.a(i, k);
    }
  }
  return sf;
}

Vector ToOriginal(const StandardForm& sf, const Vector& std_values,
                  std::size_t nv) {
  Vector x(nv, Rational(0));
  for (std::size_t k = 0; k < sf.columns.size(); ++k) {
    const auto& col = sf.columns[k];
    if (col.sign == 0) continue;
    x[col.var] += col.sign * std_values[k];
  }
  return x;
}

void CheckShape(const LpProblem& p) {
  const std::size_t nv = p.num_vars();
  const bool ok = p.nonneg.size() == nv &&
                  (p.eq_matrix.rows() == 0 || p.eq_matrix.cols() == nv) &&
                  (p.le_matrix.rows() == 0 || p.le_matrix.cols() == nv) &&
                  p.eq_rhs.size() == p.eq_matrix.rows() &&
                  p.le_rhs.size() == p.le_matrix.rows();
  if (!ok) {
    throw Error(ErrorCode::kInvalidArgument, "dimension_mismatch",
                "linear program has inconsistent dimensions");
  }
}

}  // namespace

LpOutcome SolveLp(const LpProblem& problem) {
  CheckShape(problem);
  const StandardForm sf = ToStandardForm(problem);
  const std::size_t nv = problem.num_vars();
  Simplex simplex(sf.a, sf.b);
  LpOutcome out;
  Vector farkas_std;
  if (!simplex.PhaseOne(&farkas_std)) {
    out.status = LpStatus::kInfeasible;
    out.farkas.assign(sf.b.size(), Rational(0));
    for (std::size_t i = 0; i < sf.b.size(); ++i)
      out.farkas[i] = farkas_std[i] * sf.row_sign[i];
    out.pivots = simplex.pivots();
    return out;
  }
  Vector ray_std;
  const bool bounded = simplex.PhaseTwo(sf.c, &ray_std);
  const Vector std_values = simplex.Values();
  out.solution.values = ToOriginal(sf, std_values, nv);
  out.solution.basis = simplex.basis();
  out.pivots = simplex.pivots();
  if (!bounded) {
    out.status = LpStatus::kUnbounded;
    out.ray = ToOriginal(sf, ray_std, nv);
    return out;
  }
  out.status = LpStatus::kOptimal;
  out.value = Dot(problem.objective, out.solution.values);
  return out;
}

bool VerifyFarkas(const LpProblem& problem, const Vector& y) {
  const std::size_t me = problem.eq_matrix.rows();
  const std::size_t ml = problem.le_matrix.rows();
  if (y.size() != me + ml) return false;
  for (std::size_t i = 0; i < ml; ++i)
    if (sgn(y[me + i]) < 0) return false;
  Rational rhs = 0;
  for (std::size_t i = 0; i < me; ++i) rhs += y[i] * problem.eq_rhs[i];
  for (std::size_t i = 0; i < ml; ++i) rhs += y[me + i] * problem.le_rhs[i];
  if (sgn(rhs) >= 0) return false;
  for (std::size_t j = 0; j < problem.num_vars(); ++j) {
    Rational comb = 0;
    for (std::size_t i = 0; i < me; ++i) comb += y[i] * problem.eq_matrix(i, j);
    for (std::size_t i = 0; i < ml; ++i)
      comb += y[me + i] * problem.le_matrix(i, j);
    if (problem.nonneg[j] ? sgn(comb) < 0 : sgn(comb) != 0) return false;
  }
  return true;
}

bool IsFeasiblePoint(const LpProblem& problem, const Vector& x) {
  if (x.size() != problem.num_vars()) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (problem.nonneg[j] && sgn(x[j]) < 0) return false;
  for (std::size_t i = 0; i < problem.eq_matrix.rows(); ++i)
    if (Dot(problem.eq_matrix.Row(i), x) != problem.eq_rhs[i]) return false;
  for (std::size_t i = 0; i < problem.le_matrix.rows(); ++i)
    if (Dot(problem.le_matrix.Row(i), x) > problem.le_rhs[i]) return false;
  return true;
}

std::optional<BasicSolution> FindBfs(const EqSystem& system) {
  Matrix a = system.matrix;
  Vector b = system.rhs;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (sgn(b[i]) < 0) {
      b[i] = -b[i];
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = -a(i, j);
    }
  }
  Simplex simplex(a, b);
  Vector farkas;
  if (!simplex.PhaseOne(&farkas)) return std::nullopt;
  BasicSolution sol;
  sol.values = simplex.Values();
  sol.basis = simplex.basis();
  return sol;
}

bool Tableau::Feasible() const {
  for (const auto& v : rhs)
    if (sgn(v) < 0) return false;
  return true;
}

Tableau ReducedTableau(const EqSystem& system,
                       const std::vector<std::size_t>& basis) {
  const std::size_t r = system.matrix.rows();
  const std::size_t c = system.matrix.cols();
  if (basis.size() != r) {
    throw Error(ErrorCode::kInvalidArgument, "singular_basis",
                "basis size differs from the number of rows");
  }
  Tableau t;
  t.body = system.matrix;
  t.rhs = system.rhs;
  t.basis = basis;
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t col = basis[i];
    std::size_t piv = i;
    while (piv < r && sgn(t.body(piv, col)) == 0) ++piv;
    if (piv == r) {
      throw Error(ErrorCode::kInvalidArgument, "singular_basis",
                  "basis columns are linearly dependent");
    }
    if (piv != i) {
      for (std::size_t j = 0; j < c; ++j) std::swap(t.body(piv, j), t.body(i, j));
      std::swap(t.rhs[piv], t.rhs[i]);
    }
    Pivot(t, i, col);
  }
  return t;
}

void Pivot(Tableau& t, std::size_t row, std::size_t col) {
  const std::size_t r = t.body.rows();
  const std::size_t c = t.body.cols();
  const Rational inv = 1 / t.body(row, col);
  for (std::size_t j = 0; j < c; ++j) t.body(row, j) *= inv;
  t.rhs[row] *= inv;
  for (std::size_t i = 0; i < r; ++i) {
    if (i == row || sgn(t.body(i, col)) == 0) continue;
    const Rational f = t.body(i, col);
    for (std::size_t j = 0; j < c; ++j) t.body(i, j) -= f * t.body(row, j);
    t.rhs[i] -= f * t.rhs[row];
  }
  t.basis[row] = col;
}

bool StrictFeasibility(const LpProblem& problem, std::size_t strict_row) {
  CheckShape(problem);
  const std::size_t nv = problem.num_vars();
  if (strict_row >= problem.le_matrix.rows()) {
    throw Error(ErrorCode::kInvalidArgument, "bad_row",
                "strict row index out of range");
  }
  LpProblem q = LpProblem::WithVars(nv + 1);
  for (std::size_t j = 0; j < nv; ++j) q.nonneg[j] = problem.nonneg[j];
  q.sense = Sense::kMaximize;
  q.objective[nv] = 1;
  for (std::size_t i = 0; i < problem.eq_matrix.rows(); ++i) {
    Vector row = problem.eq_matrix.Row(i);
    row.push_back(0);
    q.AddEq(row, problem.eq_rhs[i]);
  }
  for (std::size_t i = 0; i < problem.le_matrix.rows(); ++i) {
    Vector row = problem.le_matrix.Row(i);
    row.push_back(i == strict_row ? 1 : 0);
    q.AddLe(row, problem.le_rhs[i]);
  }
  Vector cap(nv + 1, Rational(0));
  cap[nv] = 1;
  q.AddLe(cap, 1);
  const LpOutcome out = SolveLp(q);
  return out.status == LpStatus::kOptimal && sgn(out.value) > 0;
}

}  // namespace dbp
