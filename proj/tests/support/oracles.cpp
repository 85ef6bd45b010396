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

#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace dbp::testing {

namespace {

// Gauss-Jordan on a square system; nullopt when singular.
std::optional<Vector> Gauss(std::vector<Vector> rows, Vector rhs) {
  const std::size_t n = rows.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && rows[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(rows[piv], rows[c]);
    std::swap(rhs[piv], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[c][c];
      for (std::size_t k = c; k < n; ++k) rows[r][k] -= f * rows[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / rows[i][i];
  return x;
}

Rational DotRef(const Vector& a, const Vector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Indices of a maximal independent subset of `rows`, greedy in order.
std::vector<std::size_t> IndependentRows(const std::vector<Halfspace>& rows,
                                         std::size_t n) {
  std::vector<std::size_t> keep;
  std::vector<Vector> basis;  // echelon rows with pivot columns
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Vector r = rows[i].g;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (r[pivots[b]] == 0) continue;
      const Rational f = r[pivots[b]] / basis[b][pivots[b]];
      for (std::size_t k = 0; k < n; ++k) r[k] -= f * basis[b][k];
    }
    std::size_t p = 0;
    while (p < n && r[p] == 0) ++p;
    if (p == n) continue;
    keep.push_back(i);
    basis.push_back(r);
    pivots.push_back(p);
  }
  return keep;
}

// Feasible points of {eq rows, ineq rows} that are unique solutions of a
// maximal independent set of eq rows plus some ineq rows.
std::vector<Vector> BasicPoints(const std::vector<Halfspace>& eq,
                                const std::vector<Halfspace>& ineq, std::size_t n) {
  const std::vector<std::size_t> indep = IndependentRows(eq, n);
  std::vector<Vector> out;
  if (indep.size() > n) return out;
  const std::size_t need = n - indep.size();
  if (need > ineq.size()) return out;
  ForEachSubset(ineq.size(), need, [&](const std::vector<std::size_t>& s) {
    std::vector<Vector> rows;
    Vector rhs;
    for (std::size_t i : indep) {
      rows.push_back(eq[i].g);
      rhs.push_back(eq[i].h);
    }
    for (std::size_t i : s) {
      rows.push_back(ineq[i].g);
      rhs.push_back(ineq[i].h);
    }
    const auto x = Gauss(rows, rhs);
    if (!x) return true;
    for (const auto& r : eq)
      if (DotRef(r.g, *x) != r.h) return true;
    for (const auto& r : ineq)
      if (DotRef(r.g, *x) > r.h) return true;
    out.push_back(*x);
    return true;
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Vector Vec(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Matrix Mat(std::initializer_list<std::initializer_list<long>> rows, std::size_t cols) {
  std::vector<Vector> rs;
  for (const auto& r : rows) rs.push_back(Vec(r));
  return Matrix::FromRows(rs, cols);
}

std::vector<Vector> BruteVertices(const std::vector<Halfspace>& rows, std::size_t n) {
  return BasicPoints({}, rows, n);
}

BruteOutcome BruteLp(const LpProblem& lp) {
  const std::size_t n = lp.num_vars();
  for (bool nn : lp.nonneg) {
    if (!nn) throw std::invalid_argument("BruteLp needs non-negative variables");
  }
  std::vector<Halfspace> eq, ineq, ceq, cineq;
  for (std::size_t i = 0; i < lp.eq_matrix.rows(); ++i) {
    eq.push_back({lp.eq_matrix.Row(i), lp.eq_rhs[i]});
    ceq.push_back({lp.eq_matrix.Row(i), 0});
  }
  for (std::size_t i = 0; i < lp.le_matrix.rows(); ++i) {
    ineq.push_back({lp.le_matrix.Row(i), lp.le_rhs[i]});
    cineq.push_back({lp.le_matrix.Row(i), 0});
  }
  for (std::size_t j = 0; j < n; ++j) {
    Vector g(n, Rational(0));
    g[j] = -1;
    ineq.push_back({g, 0});
    cineq.push_back({g, 0});
  }
  BruteOutcome out;
  const std::vector<Vector> points = BasicPoints(eq, ineq, n);
  if (points.empty()) return out;
  // Extreme rays of the recession cone, normalized by sum r = 1.
  ceq.push_back({Vector(n, Rational(1)), 1});
  const bool maximize = lp.sense == Sense::kMaximize;
  for (const auto& r : BasicPoints(ceq, cineq, n)) {
    const Rational slope = DotRef(lp.objective, r);
    if (maximize ? slope > 0 : slope < 0) {
      out.status = LpStatus::kUnbounded;
      return out;
    }
  }
  out.status = LpStatus::kOptimal;
  out.value = DotRef(lp.objective, points.front());
  for (const auto& x : points) {
    const Rational v = DotRef(lp.objective, x);
    if (maximize ? v > out.value : v < out.value) out.value = v;
  }
  return out;
}

LpProblem RandomLp(TestRng& rng, std::size_t vars, std::size_t rows, long bound) {
  LpProblem lp = LpProblem::WithVars(vars);
  lp.sense = rng.Int(0, 1) ? Sense::kMaximize : Sense::kMinimize;
  for (auto& c : lp.objective) c = rng.Coef(bound);
  for (std::size_t i = 0; i < rows; ++i) {
    Vector row(vars);
    for (auto& v : row) v = rng.Coef(bound);
    const Rational rhs = rng.Coef(bound);
    switch (rng.Int(0, 5)) {
      case 0:
        lp.AddEq(row, rhs);
        break;
      case 1:
      case 2:
        lp.AddGe(row, rhs);
        break;
      default:
        lp.AddLe(row, rhs);
    }
  }
  return lp;
}

std::vector<Vector> XVerticesRef(const DbpInstance& inst) {
  std::vector<Halfspace> rows;
  for (std::size_t i = 0; i < inst.q; ++i) rows.push_back({inst.A.Row(i), inst.a[i]});
  for (std::size_t j = 0; j < inst.n; ++j) {
    Vector g(inst.n, Rational(0));
    g[j] = -1;
    rows.push_back({g, 0});
  }
  return BruteVertices(rows, inst.n);
}

std::vector<Vector> YVerticesRef(const DbpInstance& inst) {
  std::vector<Halfspace> rows;
  for (std::size_t i = 0; i < inst.p; ++i) rows.push_back({inst.D.Row(i), inst.d[i]});
  return BruteVertices(rows, inst.m);
}

namespace {

Rational F(const DbpInstance& inst, const Vector& x, const Vector& y) {
  Rational s = inst.z_offset;
  for (std::size_t i = 0; i < inst.n; ++i) {
    s += inst.g[i] * x[i];
    for (std::size_t j = 0; j < inst.m; ++j) s += x[i] * inst.C(i, j) * y[j];
  }
  for (std::size_t j = 0; j < inst.m; ++j) s += inst.e[j] * y[j];
  return s;
}

}  // namespace

Rational PairOracle(const DbpInstance& inst) {
  const auto xs = XVerticesRef(inst);
  const auto ys = YVerticesRef(inst);
  if (xs.empty() || ys.empty()) throw std::runtime_error("empty polytope");
  std::optional<Rational> best;
  for (const auto& x : xs)
    for (const auto& y : ys) {
      const Rational v = F(inst, x, y);
      if (!best || v < *best) best = v;
    }
  return *best;
}

MinimaxBounds EpigraphMinimax(const DbpInstance& inst) {
  const auto ys = YVerticesRef(inst);
  const std::size_t n = inst.n;
  // Variables x (n, non-negative) and t split as t+ - t-.
  auto solve = [&](bool upper) {
    LpProblem lp = LpProblem::WithVars(n + 2);
    lp.sense = upper ? Sense::kMinimize : Sense::kMaximize;
    lp.objective[n] = 1;
    lp.objective[n + 1] = -1;
    for (std::size_t i = 0; i < inst.q; ++i) {
      Vector row = inst.A.Row(i);
      row.push_back(0);
      row.push_back(0);
      lp.AddLe(row, inst.a[i]);
    }
    for (const auto& y : ys) {
      // f(x, y) - t  (<= 0 for the upper bound, >= 0 for the lower one)
      Vector row(n + 2, Rational(0));
      Rational ey = 0;
      for (std::size_t j = 0; j < inst.m; ++j) ey += inst.e[j] * y[j];
      for (std::size_t i = 0; i < n; ++i) {
        row[i] = inst.g[i];
        for (std::size_t j = 0; j < inst.m; ++j) row[i] += inst.C(i, j) * y[j];
      }
      row[n] = -1;
      row[n + 1] = 1;
      if (upper) {
        lp.AddLe(row, -ey);
      } else {
        lp.AddGe(row, -ey);
      }
    }
    const LpOutcome out = SolveLp(lp);
    if (out.status != LpStatus::kOptimal) throw std::runtime_error("epigraph LP failed");
    return out.value;
  };
  return {solve(true), solve(false)};
}

bool BooleanSolvable(const BooleanSystem& bs) {
  for (std::size_t mask = 0; mask < (std::size_t{1} << bs.n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < bs.A.rows() && ok; ++i) {
      Rational lhs = 0;
      for (std::size_t j = 0; j < bs.n; ++j)
        if (mask >> j & 1) lhs += bs.A(i, j);
      ok = lhs <= bs.a[i];
    }
    if (ok) return true;
  }
  return false;
}

Rational PlcpVertexMin(const PlcpProblem& pp) {
  std::vector<Halfspace> rows;
  for (std::size_t i = 0; i < pp.A.rows(); ++i) rows.push_back({pp.A.Row(i), pp.a[i]});
  for (std::size_t j = 0; j < pp.n; ++j) {
    Vector g(pp.n, Rational(0));
    g[j] = -1;
    rows.push_back({g, 0});
  }
  std::optional<Rational> best;
  for (const auto& x : BruteVertices(rows, pp.n)) {
    Rational total = 0;
    for (const auto& grp : pp.groups) {
      std::optional<Rational> lo;
      for (const auto& pc : grp) {
        const Rational v = DotRef(pc.c, x) + pc.c0;
        if (!lo || v < *lo) lo = v;
      }
      total += *lo;
    }
    if (!best || total < *best) best = total;
  }
  if (!best) throw std::runtime_error("empty X");
  return *best;
}

PlcpProblem RandomPlcp(TestRng& rng, std::size_t n, std::size_t groups,
                       std::size_t max_pieces, long bound) {
  PlcpProblem pp;
  pp.n = n;
  const std::size_t q = static_cast<std::size_t>(rng.Int(1, 2));
  pp.A = Matrix(q, n);
  pp.a.assign(q, Rational(0));
  for (std::size_t j = 0; j < n; ++j) pp.A(0, j) = 1;
  pp.a[0] = rng.Int(1, bound);
  for (std::size_t i = 1; i < q; ++i) {
    for (std::size_t j = 0; j < n; ++j) pp.A(i, j) = rng.Coef(bound);
    pp.a[i] = rng.Int(0, bound);
  }
  for (std::size_t g = 0; g < groups; ++g) {
    std::vector<LinearPiece> grp(static_cast<std::size_t>(
        rng.Int(2, static_cast<long>(max_pieces))));
    for (auto& pc : grp) {
      pc.c.resize(n);
      for (auto& v : pc.c) v = rng.Coef(bound);
      pc.c0 = rng.Coef(bound);
    }
    pp.groups.push_back(std::move(grp));
  }
  return pp;
}

std::size_t ReferenceL(const DbpInstance& inst) {
  // ceil(log2(|v| + 1)) by repeated doubling.
  auto lg = [](const Rational& r) {
    const Integer v = abs(r.get_num()) + 1;
    std::size_t t = 0;
    Integer p = 1;
    while (p < v) {
      p *= 2;
      ++t;
    }
    return t;
  };
  std::size_t l1 = lg(Rational(static_cast<long>(inst.n * (inst.q + 1))));
  for (std::size_t i = 0; i < inst.q; ++i) {
    l1 += lg(inst.a[i]);
    for (std::size_t j = 0; j < inst.n; ++j) l1 += lg(inst.A(i, j));
  }
  std::size_t l2 = lg(Rational(static_cast<long>(inst.p * (inst.m + 1))));
  for (std::size_t i = 0; i < inst.p; ++i) {
    l2 += lg(inst.d[i]);
    for (std::size_t j = 0; j < inst.m; ++j) l2 += lg(inst.D(i, j));
  }
  Rational h = 0;
  auto upd = [&](const Rational& v) {
    if (abs(v) > h) h = abs(v);
  };
  for (std::size_t i = 0; i < inst.n; ++i)
    for (std::size_t j = 0; j < inst.m; ++j) upd(inst.C(i, j));
  for (const auto& v : inst.g) upd(v);
  for (const auto& v : inst.e) upd(v);
  return l1 + l2 + (inst.q * inst.m + inst.q + inst.m) * (1 + lg(h));
}

DbpInstance RandomPerfectInstance(TestRng& rng, std::size_t n, std::size_t m,
                                  std::size_t q, long bound) {
  DbpInstance inst;
  inst.n = n;
  inst.m = m;
  inst.q = q;
  inst.A = Matrix(q, n);
  inst.a.assign(q, Rational(0));
  for (std::size_t j = 0; j < n; ++j) inst.A(0, j) = 1;
  inst.a[0] = rng.Int(1, bound);
  for (std::size_t i = 1; i < q; ++i) {
    for (std::size_t j = 0; j < n; ++j) inst.A(i, j) = rng.Coef(bound);
    inst.a[i] = rng.Int(0, bound);
  }
  switch (rng.Int(0, 2)) {
    case 0:  // box
      inst.p = 2 * m;
      inst.D = Matrix(2 * m, m);
      inst.d.assign(2 * m, Rational(0));
      for (std::size_t j = 0; j < m; ++j) {
        const long lo = rng.Int(-1, 1);
        inst.D(j, j) = 1;
        inst.d[j] = lo + rng.Int(1, bound);
        inst.D(m + j, j) = -1;
        inst.d[m + j] = -lo;
      }
      break;
    case 1:  // simplex
      inst.p = m + 1;
      inst.D = Matrix(m + 1, m);
      inst.d.assign(m + 1, Rational(0));
      for (std::size_t j = 0; j < m; ++j) {
        inst.D(j, j) = -1;
        inst.D(m, j) = 1;
      }
      inst.d[m] = rng.Int(1, bound);
      break;
    default: {  // one group of size m, or singletons
      const bool one = rng.Int(0, 1) == 1;
      const std::size_t l = one ? 1 : m;
      inst.p = l + m;
      inst.D = Matrix(l + m, m);
      inst.d.assign(l + m, Rational(0));
      for (std::size_t j = 0; j < m; ++j) {
        inst.D(one ? 0 : j, j) = 1;
        inst.D(l + j, j) = -1;
      }
      for (std::size_t g = 0; g < l; ++g) inst.d[g] = 1;
    }
  }
  inst.C = Matrix(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) inst.C(i, j) = rng.Coef(bound);
  inst.g.resize(n);
  for (auto& v : inst.g) v = rng.Coef(bound);
  inst.e.resize(m);
  for (auto& v : inst.e) v = rng.Coef(bound);
  return inst;
}

}  // namespace dbp::testing
