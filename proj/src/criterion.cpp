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

#include "criterion.hpp"

#include <algorithm>

namespace dbp {

WSystem BuildWSystem(const DbpInstance& inst, const Rational& h) {
  WSystem w;
  w.n = inst.n;
  w.q = inst.q;
  w.m = inst.m;
  w.p = inst.p;
  const std::size_t rows = inst.q + inst.m + 1;
  const std::size_t cols = inst.n + inst.q + inst.p + 1;
  Matrix& mat = w.sys.matrix;
  mat = Matrix(rows, cols);
  w.sys.rhs.assign(rows, Rational(0));
  for (std::size_t i = 0; i < inst.q; ++i) {
    for (std::size_t j = 0; j < inst.n; ++j) mat(i, j) = inst.A(i, j);
    mat(i, inst.n + i) = 1;
    w.sys.rhs[i] = inst.a[i];
  }
  for (std::size_t j = 0; j < inst.m; ++j) {
    const std::size_t row = inst.q + j;
    for (std::size_t i = 0; i < inst.n; ++i) mat(row, i) = inst.C(i, j);
    for (std::size_t k = 0; k < inst.p; ++k)
      mat(row, w.v_begin() + k) = inst.D(k, j);
    w.sys.rhs[row] = -inst.e[j];
  }
  const std::size_t last = rows - 1;
  for (std::size_t i = 0; i < inst.n; ++i) mat(last, i) = inst.g[i];
  for (std::size_t k = 0; k < inst.p; ++k) mat(last, w.v_begin() + k) = -inst.d[k];
  mat(last, w.last_col()) = 1;
  w.sys.rhs[last] = h;
  return w;
}

const char* VerdictName(Verdict v) {
  return v == Verdict::kSubset ? "Subset" : "NotSubset";
}

bool VerifyCertificate(const WSystem& w, const Certificate& cert) {
  const std::size_t r = w.rows();
  const std::size_t c = w.cols();
  if (cert.alpha.size() != c || cert.basis.size() != r) return false;
  std::vector<bool> in_basis(c, false);
  for (std::size_t j : cert.basis) {
    if (j >= c || in_basis[j]) return false;
    in_basis[j] = true;
  }
  if (!in_basis[w.last_col()]) return false;
  for (std::size_t j = 0; j < c; ++j) {
    if (sgn(cert.alpha[j]) < 0) return false;
    if (!in_basis[j] && sgn(cert.alpha[j]) != 0) return false;
  }
  if (w.sys.matrix.Apply(cert.alpha) != w.sys.rhs) return false;
  Matrix basis_cols(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k)
      basis_cols(i, k) = w.sys.matrix(i, cert.basis[k]);
  return Rank(basis_cols) == r;
}

Tableau ToBlinn21(const Tableau& t, std::size_t col, std::size_t* k) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < t.body.rows(); ++i)
    if (sgn(t.body(i, col)) == 0) order.push_back(i);
  *k = order.size();
  for (std::size_t i = 0; i < t.body.rows(); ++i)
    if (sgn(t.body(i, col)) < 0) order.push_back(i);
  if (order.size() != t.body.rows()) {
    throw Error(ErrorCode::kInvalidArgument, "positive_entry",
                "column has a positive entry");
  }
  Tableau out;
  out.body = t.body.SelectRows(order);
  for (std::size_t i : order) {
    out.rhs.push_back(t.rhs[i]);
    out.basis.push_back(t.basis[i]);
  }
  return out;
}

namespace {

std::vector<bool> BasicMask(const Tableau& t) {
  std::vector<bool> mask(t.body.cols(), false);
  for (std::size_t j : t.basis) mask[j] = true;
  return mask;
}

// Objective coefficients of z_{i0} over all columns.
Vector RowObjective(const Tableau& t, std::size_t i0, std::size_t last_col) {
  const auto basic = BasicMask(t);
  Vector c(t.body.cols(), Rational(0));
  for (std::size_t j = 0; j < t.body.cols(); ++j)
    if (!basic[j] && j != last_col) c[j] = t.body(i0, j);
  return c;
}

}  // namespace

bool BoundednessCheck(const Tableau& t, std::size_t k, std::size_t i0,
                      std::size_t last_col) {
  (void)k;
  const auto basic = BasicMask(t);
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < t.body.cols(); ++j)
    if (!basic[j]) cols.push_back(j);
  LpProblem lp = LpProblem::WithVars(cols.size());
  for (std::size_t i = 0; i < t.body.rows(); ++i) {
    Vector row(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) row[c] = t.body(i, cols[c]);
    lp.AddLe(row, 0);
  }
  Vector norm(cols.size(), Rational(0));
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (cols[c] != last_col) norm[c] = t.body(i0, cols[c]);
  lp.AddEq(norm, 1);
  return SolveLp(lp).status != LpStatus::kInfeasible;
}

RowLp SolveRowLp(const Tableau& t, std::size_t k, std::size_t i0,
                 std::size_t last_col) {
  RowLp out;
  const std::size_t nc = t.body.cols();
  const Vector obj = RowObjective(t, i0, last_col);
  {
    LpProblem lp = LpProblem::WithVars(nc);
    lp.sense = Sense::kMaximize;
    lp.objective = obj;
    for (std::size_t i = 0; i < t.body.rows(); ++i)
      lp.AddEq(t.body.Row(i), t.rhs[i]);
    out.full = SolveLp(lp);
  }
  std::vector<bool> keep = std::vector<bool>(nc, false);
  const auto basic = BasicMask(t);
  for (std::size_t j = 0; j < nc; ++j) keep[j] = !basic[j] && j != last_col;
  for (std::size_t i = 0; i < k; ++i) keep[t.basis[i]] = true;
  for (std::size_t j = 0; j < nc; ++j)
    if (keep[j]) out.reduced_cols.push_back(j);
  LpProblem lp = LpProblem::WithVars(out.reduced_cols.size());
  lp.sense = Sense::kMaximize;
  for (std::size_t c = 0; c < out.reduced_cols.size(); ++c)
    lp.objective[c] = obj[out.reduced_cols[c]];
  for (std::size_t i = 0; i < k; ++i) {
    Vector row(out.reduced_cols.size());
    for (std::size_t c = 0; c < out.reduced_cols.size(); ++c)
      row[c] = t.body(i, out.reduced_cols[c]);
    lp.AddEq(row, t.rhs[i]);
  }
  out.reduced = SolveLp(lp);
  if (out.reduced.status == LpStatus::kOptimal)
    out.t_star = out.reduced.value - t.rhs[i0];
  return out;
}

namespace {

// Fills the negative-row basics from alpha_bar and the value of the last
// column, leaving row `skip` nonbasic.
std::optional<Certificate> Complete(const Tableau& t, std::size_t k,
                                    const RowLp& lp, std::size_t last_col,
                                    std::size_t skip,
                                    const Rational& last_value) {
  if (lp.reduced.status != LpStatus::kOptimal) return std::nullopt;
  const std::size_t nc = t.body.cols();
  Certificate cert;
  cert.alpha.assign(nc, Rational(0));
  for (std::size_t c = 0; c < lp.reduced_cols.size(); ++c)
    cert.alpha[lp.reduced_cols[c]] = lp.reduced.solution.values[c];
  for (std::size_t b : lp.reduced.solution.basis) {
    if (b >= lp.reduced_cols.size()) return std::nullopt;
    cert.basis.push_back(lp.reduced_cols[b]);
  }
  cert.alpha[last_col] = last_value;
  const auto basic = BasicMask(t);
  for (std::size_t i = k; i < t.body.rows(); ++i) {
    Rational v = t.rhs[i];
    for (std::size_t j = 0; j < nc; ++j)
      if (!basic[j] && sgn(t.body(i, j)) != 0) v -= t.body(i, j) * cert.alpha[j];
    if (i == skip) continue;
    cert.alpha[t.basis[i]] = v;
    cert.basis.push_back(t.basis[i]);
  }
  cert.basis.push_back(last_col);
  return cert;
}

}  // namespace

std::optional<Certificate> ConstructCertificate(const Tableau& t, std::size_t k,
                                                std::size_t i0,
                                                const RowLp& lp,
                                                std::size_t last_col) {
  if (lp.reduced.status != LpStatus::kOptimal) return std::nullopt;
  const Rational value = -lp.t_star / t.body(i0, last_col);
  return Complete(t, k, lp, last_col, i0, value);
}

std::optional<Certificate> RepairCertificate(const Tableau& t, std::size_t k,
                                             const RowLp& lp,
                                             std::size_t last_col) {
  if (lp.reduced.status != LpStatus::kOptimal) return std::nullopt;
  Vector alpha_bar(t.body.cols(), Rational(0));
  for (std::size_t c = 0; c < lp.reduced_cols.size(); ++c)
    alpha_bar[lp.reduced_cols[c]] = lp.reduced.solution.values[c];
  const auto basic = BasicMask(t);
  std::optional<std::size_t> best_row;
  Rational best;
  for (std::size_t i = k; i < t.body.rows(); ++i) {
    Rational z = -t.rhs[i];
    for (std::size_t j = 0; j < t.body.cols(); ++j)
      if (!basic[j] && j != last_col) z += t.body(i, j) * alpha_bar[j];
    Rational ratio = z / -t.body(i, last_col);
    if (!best_row || ratio > best) {
      best_row = i;
      best = ratio;
    }
  }
  if (!best_row || sgn(best) < 0) return std::nullopt;
  auto cert = Complete(t, k, lp, last_col, *best_row, best);
  if (cert) cert->repaired = true;
  return cert;
}

std::optional<LpOutcome> AffineCase(const DbpInstance& inst) {
  LpProblem lp = XProblem(inst, inst.g);
  const Matrix ct = inst.C.Transposed();
  for (std::size_t j = 0; j < inst.m; ++j) lp.AddEq(ct.Row(j), -inst.e[j]);
  LpOutcome out = SolveLp(lp);
  if (out.status == LpStatus::kInfeasible) return std::nullopt;
  if (out.status == LpStatus::kUnbounded) {
    throw Error(ErrorCode::kValidation, "unbounded_x",
                "affine-case LP is unbounded, so X is unbounded");
  }
  return out;
}

namespace {

Certificate FromTableau(const Tableau& t) {
  Certificate cert;
  cert.alpha.assign(t.body.cols(), Rational(0));
  for (std::size_t i = 0; i < t.body.rows(); ++i) cert.alpha[t.basis[i]] = t.rhs[i];
  cert.basis = t.basis;
  return cert;
}

void Note(CriterionOutcome& out, std::string kind, std::string detail) {
  out.discrepancies.push_back({std::move(kind), std::move(detail)});
}

// Accepts a NotSubset certificate only when it verifies.
bool Accept(CriterionOutcome& out, const WSystem& w, Certificate cert,
            const char* step) {
  if (!VerifyCertificate(w, cert)) {
    Note(out, "certificate_rejected", std::string("step ") + step);
    return false;
  }
  out.verdict = Verdict::kNotSubset;
  out.step = step;
  out.certificate = std::move(cert);
  return true;
}

}  // namespace

CriterionOutcome Algorithm1(const DbpInstance& inst, const Rational& h,
                            const CriterionOptions& options) {
  if (options.check_precondition && AffineCase(inst)) {
    throw Error(ErrorCode::kValidation, "precondition_violated",
                "{A x <= a, C^T x = -e, x >= 0} is consistent");
  }
  CriterionOutcome out;
  const WSystem w = BuildWSystem(inst, h);
  const std::size_t last = w.last_col();
  const std::size_t r = w.rows();

  const auto bfs = FindBfs(w.sys);
  if (!bfs) {
    out.verdict = Verdict::kSubset;
    out.step = "w_infeasible";
    return out;
  }
  if (bfs->basis.size() != r) {
    throw Error(ErrorCode::kInternal, "rank_deficient_w",
                "equality system W does not have full row rank");
  }
  Tableau t = ReducedTableau(w.sys, bfs->basis);
  if (std::find(t.basis.begin(), t.basis.end(), last) != t.basis.end()) {
    if (Accept(out, w, FromTableau(t), "bfs_basic")) return out;
  }

  // Positive entry: ratio test.
  std::optional<std::size_t> piv;
  for (std::size_t i = 0; i < r; ++i) {
    if (sgn(t.body(i, last)) <= 0) continue;
    if (!piv || t.rhs[i] / t.body(i, last) < t.rhs[*piv] / t.body(*piv, last))
      piv = i;
  }
  if (piv) {
    Pivot(t, *piv, last);
    if (!Accept(out, w, FromTableau(t), "ratio_pivot"))
      out.step = "ratio_pivot_rejected";
    return out;
  }
  // Nonzero entry on a zero right-hand side: degenerate pivot.
  for (std::size_t i = 0; i < r; ++i) {
    if (sgn(t.body(i, last)) != 0 && sgn(t.rhs[i]) == 0) {
      Pivot(t, i, last);
      if (!Accept(out, w, FromTableau(t), "degenerate_pivot"))
        out.step = "degenerate_pivot_rejected";
      return out;
    }
  }

  std::size_t k = 0;
  const Tableau b = ToBlinn21(t, last, &k);
  out.k = k + 1;
  if (k == r) {
    out.verdict = Verdict::kSubset;
    out.step = "no_negative_rows";
    return out;
  }

  std::vector<RowLp> lps;
  for (std::size_t i0 = k; i0 < r; ++i0) {
    const bool unbounded = BoundednessCheck(b, k, i0, last);
    RowLp lp = SolveRowLp(b, k, i0, last);
    const bool lp_unbounded = lp.full.status == LpStatus::kUnbounded;
    if (unbounded != lp_unbounded) {
      Note(out, "boundedness_mismatch",
           "row " + std::to_string(i0 + 1) + ": ray system and LP disagree");
    }
    if (lp.full.status == LpStatus::kOptimal &&
        lp.reduced.status == LpStatus::kOptimal &&
        lp.full.value - b.rhs[i0] != lp.t_star) {
      Note(out, "reduced_lp_mismatch",
           "row " + std::to_string(i0 + 1) + ": reduced optimum differs");
    }
    if (unbounded) ++out.unbounded_rows;
    lps.push_back(std::move(lp));
  }
  if (out.unbounded_rows > 0) {
    out.verdict = Verdict::kSubset;
    out.step = "unbounded_row";
    return out;
  }

  std::optional<std::size_t> first_nonneg;
  for (std::size_t i0 = k; i0 < r; ++i0) {
    const RowLp& lp = lps[i0 - k];
    if (lp.reduced.status != LpStatus::kOptimal) {
      Note(out, "reduced_lp_unbounded",
           "row " + std::to_string(i0 + 1) + ": reduced LP not optimal");
      continue;
    }
    out.t_stars.push_back(lp.t_star);
    if (sgn(lp.t_star) < 0) continue;
    if (!first_nonneg) first_nonneg = i0;
    if (auto cert = ConstructCertificate(b, k, i0, lp, last)) {
      if (Accept(out, w, std::move(*cert), "lp_nonnegative")) return out;
    }
  }
  if (first_nonneg) {
    const RowLp& lp = lps[*first_nonneg - k];
    if (auto cert = RepairCertificate(b, k, lp, last)) {
      if (Accept(out, w, std::move(*cert), "lp_nonnegative_repaired"))
        return out;
    }
    throw Error(ErrorCode::kInternal, "certificate_construction_failed",
                "no verified certificate for a non-negative optimum");
  }
  out.verdict = Verdict::kSubset;
  out.step = "all_negative";
  return out;
}

}  // namespace dbp
