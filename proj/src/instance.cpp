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

#include "instance.hpp"

#include <algorithm>

namespace dbp {

Rational DbpInstance::CoreObjective(const Vector& x, const Vector& y) const {
  Rational z = Dot(g, x) + Dot(e, y);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < m; ++j) z += x[i] * C(i, j) * y[j];
  }
  return z;
}

bool DbpInstance::InX(const Vector& x) const {
  if (x.size() != n) return false;
  for (const auto& v : x)
    if (sgn(v) < 0) return false;
  for (std::size_t i = 0; i < q; ++i)
    if (Dot(A.Row(i), x) > a[i]) return false;
  return true;
}

bool DbpInstance::InY(const Vector& y) const {
  if (y.size() != m) return false;
  for (std::size_t i = 0; i < p; ++i)
    if (Dot(D.Row(i), y) > d[i]) return false;
  return true;
}

bool DbpInstance::IsIntegral() const {
  auto all_int = [](const auto& range) {
    return std::all_of(range.begin(), range.end(), IsInteger);
  };
  auto mat_int = [](const Matrix& mat) {
    for (std::size_t i = 0; i < mat.rows(); ++i)
      for (std::size_t j = 0; j < mat.cols(); ++j)
        if (!IsInteger(mat(i, j))) return false;
    return true;
  };
  return mat_int(C) && mat_int(A) && mat_int(D) && all_int(a) && all_int(g) &&
         all_int(e) && all_int(d);
}

namespace {

[[noreturn]] void Invalid(const std::string& kind, const std::string& msg) {
  throw Error(ErrorCode::kValidation, kind, msg);
}

bool Shaped(const Matrix& mat, std::size_t r, std::size_t c) {
  return mat.rows() == r && (r == 0 || mat.cols() == c);
}

}  // namespace

void ValidateInstance(const DbpInstance& inst) {
  if (inst.n == 0 || inst.m == 0 || inst.q == 0 || inst.p == 0)
    Invalid("bad_dimensions", "n, m, q and p must be positive");
  if (!Shaped(inst.C, inst.n, inst.m) || !Shaped(inst.A, inst.q, inst.n) ||
      !Shaped(inst.D, inst.p, inst.m) || inst.a.size() != inst.q ||
      inst.g.size() != inst.n || inst.e.size() != inst.m ||
      inst.d.size() != inst.p)
    Invalid("bad_dimensions", "matrix or vector sizes disagree with n, m, q, p");
  if (inst.m >= inst.p) Invalid("bad_dimensions", "m must be less than p");
  if (Rank(inst.D) != inst.m)
    Invalid("rank_deficient", "rank of D is less than m");
  Vector ones(inst.n, Rational(1));
  const LpOutcome out = SolveLp(XProblem(inst, ones, Sense::kMaximize));
  if (out.status == LpStatus::kInfeasible)
    Invalid("infeasible_x", "X = {x >= 0 : A x <= a} is empty");
  if (out.status == LpStatus::kUnbounded)
    Invalid("unbounded_x", "X = {x >= 0 : A x <= a} is unbounded");
}

LpProblem XProblem(const DbpInstance& inst, const Vector& c, Sense sense) {
  LpProblem lp = LpProblem::WithVars(inst.n);
  lp.sense = sense;
  lp.objective = c;
  for (std::size_t i = 0; i < inst.q; ++i) lp.AddLe(inst.A.Row(i), inst.a[i]);
  return lp;
}

LpProblem YProblem(const Matrix& D, const Vector& d, const Vector& c,
                   Sense sense) {
  LpProblem lp = LpProblem::WithVars(D.cols(), false);
  lp.sense = sense;
  lp.objective = c;
  for (std::size_t i = 0; i < D.rows(); ++i) lp.AddLe(D.Row(i), d[i]);
  return lp;
}

namespace {

struct BasicPoint {
  std::vector<std::size_t> rows;
  Vector point;
};

// Solutions of every nonsingular m-row subsystem, feasible or not.
std::vector<BasicPoint> BasicPoints(const Matrix& D, const Vector& d) {
  const std::size_t m = D.cols();
  std::vector<BasicPoint> out;
  ForEachSubset(D.rows(), m, [&](const std::vector<std::size_t>& rows) {
    Vector rhs(m);
    for (std::size_t i = 0; i < m; ++i) rhs[i] = d[rows[i]];
    if (auto y = SolveSquareSystem(D.SelectRows(rows), rhs))
      out.push_back({rows, std::move(*y)});
    return true;
  });
  return out;
}

bool Satisfies(const Matrix& D, const Vector& d, const Vector& y) {
  for (std::size_t i = 0; i < D.rows(); ++i)
    if (Dot(D.Row(i), y) > d[i]) return false;
  return true;
}

std::vector<Vector> SortedUnique(std::vector<Vector> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// 0 = empty, 1 = bounded non-empty, 2 = unbounded; `witness` receives a
// coordinate direction along which the set is unbounded.
int BoundedStatus(const Matrix& D, const Vector& d, Vector* witness) {
  const std::size_t m = D.cols();
  for (std::size_t j = 0; j < m; ++j) {
    for (int s : {1, -1}) {
      Vector c(m, Rational(0));
      c[j] = s;
      const LpOutcome out = SolveLp(YProblem(D, d, c, Sense::kMaximize));
      if (out.status == LpStatus::kInfeasible) return 0;
      if (out.status == LpStatus::kUnbounded) {
        if (witness) *witness = out.ray;
        return 2;
      }
    }
  }
  return 1;
}

}  // namespace

std::vector<Vector> EnumerateVertices(const Matrix& D, const Vector& d,
                                      std::size_t subset_cap) {
  if (BinomialCapped(D.rows(), D.cols(), subset_cap) > subset_cap)
    Invalid("too_many_subsets", "vertex enumeration exceeds the subset cap");
  const int status = BoundedStatus(D, d, nullptr);
  if (status == 0) return {};
  if (status == 2) Invalid("unbounded_set", "polyhedron is unbounded");
  std::vector<Vector> pts;
  for (auto& bp : BasicPoints(D, d))
    if (Satisfies(D, d, bp.point)) pts.push_back(std::move(bp.point));
  return SortedUnique(std::move(pts));
}

const char* RedundancyName(Redundancy r) {
  switch (r) {
    case Redundancy::kNotRedundant:
      return "not_redundant";
    case Redundancy::kWeakly:
      return "weakly";
    case Redundancy::kStrongly:
      return "strongly";
    case Redundancy::kDegenerate:
      return "degenerate";
  }
  return "unknown";
}

Redundancy ClassifyRedundancy(const Vector& s, const Rational& s0,
                              const Matrix& D, const Vector& d) {
  if (IsZero(s))
    return sgn(s0) >= 0 ? Redundancy::kDegenerate : Redundancy::kNotRedundant;
  // min d.v subject to D^T v = s, v >= 0, the dual of max s.y over D y <= d.
  LpProblem lp = LpProblem::WithVars(D.rows());
  lp.objective = d;
  const Matrix dt = D.Transposed();
  for (std::size_t j = 0; j < D.cols(); ++j) lp.AddEq(dt.Row(j), s[j]);
  const LpOutcome out = SolveLp(lp);
  if (out.status != LpStatus::kOptimal) return Redundancy::kNotRedundant;
  if (out.value > s0) return Redundancy::kNotRedundant;
  if (out.value < s0) return Redundancy::kStrongly;
  return Redundancy::kWeakly;
}

PerfectReport CheckPerfect(const Matrix& D, const Vector& d) {
  const std::size_t m = D.cols();
  const std::size_t p = D.rows();
  if (Rank(D) < m) Invalid("rank_deficient", "rank of D is less than m");
  PerfectReport rep;

  // Interior: max t with D y + t <= d.
  {
    LpProblem lp = LpProblem::WithVars(m + 1, false);
    lp.sense = Sense::kMaximize;
    lp.objective[m] = 1;
    for (std::size_t i = 0; i < p; ++i) {
      Vector row = D.Row(i);
      row.push_back(1);
      lp.AddLe(row, d[i]);
    }
    Vector cap(m + 1, Rational(0));
    cap[m] = 1;
    lp.AddLe(cap, 1);
    const LpOutcome out = SolveLp(lp);
    if (out.status == LpStatus::kInfeasible) {
      rep.violations.push_back({'a', "empty", {}, std::nullopt});
      return rep;
    }
    if (sgn(out.value) <= 0)
      rep.violations.push_back({'a', "empty_interior", {}, std::nullopt});
  }

  Vector ray;
  const bool bounded = BoundedStatus(D, d, &ray) == 1;
  if (!bounded) rep.violations.push_back({'a', "unbounded", {}, ray});

  for (std::size_t k = 0; k < p; ++k) {
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < p; ++i)
      if (i != k) others.push_back(i);
    Vector d_others(others.size());
    for (std::size_t i = 0; i < others.size(); ++i) d_others[i] = d[others[i]];
    const Redundancy r =
        ClassifyRedundancy(D.Row(k), d[k], D.SelectRows(others), d_others);
    if (r != Redundancy::kNotRedundant) {
      rep.redundant_rows.push_back(k);
      rep.violations.push_back(
          {'a', std::string("redundant_row_") + RedundancyName(r), {k},
           std::nullopt});
    }
  }

  std::vector<Vector> vertices;
  for (const auto& bp : BasicPoints(D, d)) {
    if (!Satisfies(D, d, bp.point)) {
      rep.violations.push_back({'b', "basic_point_outside", bp.rows, bp.point});
    } else {
      vertices.push_back(bp.point);
    }
  }
  vertices = SortedUnique(std::move(vertices));
  for (const auto& v : vertices) {
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < p; ++i)
      if (Dot(D.Row(i), v) == d[i]) tight.push_back(i);
    if (tight.size() != m)
      rep.violations.push_back({'c', "degenerate_vertex", tight, v});
  }
  if (bounded) rep.vertices = std::move(vertices);
  rep.is_perfect = rep.violations.empty();
  return rep;
}

std::size_t ComputeL(const DbpInstance& inst) {
  if (!inst.IsIntegral())
    Invalid("non_integer_instance", "encoding length needs integer data");
  auto clp1 = [](const Rational& r) { return CeilLog2Plus1(abs(r.get_num())); };
  std::size_t l1 = 0;
  for (std::size_t i = 0; i < inst.q; ++i) {
    for (std::size_t j = 0; j < inst.n; ++j) l1 += clp1(inst.A(i, j));
    l1 += clp1(inst.a[i]);
  }
  l1 += CeilLog2Plus1(Integer(static_cast<unsigned long>(inst.n * (inst.q + 1))));
  std::size_t l2 = 0;
  for (std::size_t i = 0; i < inst.p; ++i) {
    for (std::size_t j = 0; j < inst.m; ++j) l2 += clp1(inst.D(i, j));
    l2 += clp1(inst.d[i]);
  }
  l2 += CeilLog2Plus1(Integer(static_cast<unsigned long>(inst.p * (inst.m + 1))));
  Rational h = 0;
  for (std::size_t i = 0; i < inst.n; ++i)
    for (std::size_t j = 0; j < inst.m; ++j) h = std::max<Rational>(h, abs(inst.C(i, j)));
  for (const auto& v : inst.g) h = std::max<Rational>(h, abs(v));
  for (const auto& v : inst.e) h = std::max<Rational>(h, abs(v));
  const std::size_t coupling = inst.q * inst.m + inst.q + inst.m;
  return l1 + l2 + coupling * (1 + CeilLog2Plus1(h.get_num()));
}

MinimaxBounds ComputeMinimaxBounds(const DbpInstance& inst) {
  const std::size_t n = inst.n;
  const std::size_t p = inst.p;
  // Variables (x, v), both non-negative.
  auto build = [&](bool upper) {
    LpProblem lp = LpProblem::WithVars(n + p);
    lp.sense = upper ? Sense::kMinimize : Sense::kMaximize;
    for (std::size_t i = 0; i < n; ++i) lp.objective[i] = inst.g[i];
    for (std::size_t k = 0; k < p; ++k)
      lp.objective[n + k] = upper ? inst.d[k] : Rational(-inst.d[k]);
    for (std::size_t i = 0; i < inst.q; ++i) {
      Vector row(n + p, Rational(0));
      for (std::size_t j = 0; j < n; ++j) row[j] = inst.A(i, j);
      lp.AddLe(row, inst.a[i]);
    }
    for (std::size_t j = 0; j < inst.m; ++j) {
      Vector row(n + p, Rational(0));
      for (std::size_t i = 0; i < n; ++i)
        row[i] = upper ? Rational(-inst.C(i, j)) : inst.C(i, j);
      for (std::size_t k = 0; k < p; ++k) row[n + k] = inst.D(k, j);
      lp.AddEq(row, upper ? inst.e[j] : Rational(-inst.e[j]));
    }
    const LpOutcome out = SolveLp(lp);
    if (out.status != LpStatus::kOptimal) {
      throw Error(ErrorCode::kValidation, "minimax_failed",
                  std::string("minimax bound LP is ") + LpStatusName(out.status));
    }
    return out.value;
  };
  return {build(true), build(false)};
}

}  // namespace dbp
