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

#include "oracle.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace dbp {

namespace {

constexpr std::size_t kCacheLimit = 4096;

std::string CacheKey(const Matrix& D, const Vector& d) {
  std::string key = std::to_string(D.rows()) + "x" + std::to_string(D.cols());
  for (std::size_t i = 0; i < D.rows(); ++i) {
    for (std::size_t j = 0; j < D.cols(); ++j) key += "," + FormatRational(D(i, j));
    key += ";" + FormatRational(d[i]);
  }
  return key;
}

}  // namespace

std::vector<Vector> CachedVertices(const Matrix& D, const Vector& d) {
  static std::mutex mu;
  static std::map<std::string, std::vector<Vector>> cache;
  const std::string key = CacheKey(D, d);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::vector<Vector> verts = EnumerateVertices(D, d);
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() >= kCacheLimit) cache.clear();
  cache.emplace(key, verts);
  return verts;
}

std::vector<Vector> XVertices(const DbpInstance& inst) {
  Matrix dx = inst.A;
  Vector rhs = inst.a;
  for (std::size_t j = 0; j < inst.n; ++j) {
    Vector row(inst.n, Rational(0));
    row[j] = -1;
    dx.AppendRow(row);
    rhs.push_back(0);
  }
  return EnumerateVertices(dx, rhs);
}

namespace {

// min over X of (C y + g).x
LpOutcome MinOverX(const DbpInstance& inst, const Vector& y) {
  Vector c = inst.g;
  for (std::size_t i = 0; i < inst.n; ++i)
    for (std::size_t j = 0; j < inst.m; ++j) c[i] += inst.C(i, j) * y[j];
  return SolveLp(XProblem(inst, c));
}

// Rows of {u >= 0 : -A^T u <= C y + g} followed by a.u <= e.y - h.
LpProblem USystem(const DbpInstance& inst, const Vector& y, const Rational& h) {
  LpProblem lp = LpProblem::WithVars(inst.q);
  for (std::size_t i = 0; i < inst.n; ++i) {
    Vector row(inst.q);
    for (std::size_t k = 0; k < inst.q; ++k) row[k] = -inst.A(k, i);
    Rational rhs = inst.g[i];
    for (std::size_t j = 0; j < inst.m; ++j) rhs += inst.C(i, j) * y[j];
    lp.AddLe(row, rhs);
  }
  lp.AddLe(inst.a, Dot(inst.e, y) - h);
  return lp;
}

// Rows of {v >= 0 : -D^T v == C^T x + e} followed by d.v <= g.x - h.
LpProblem VSystem(const DbpInstance& inst, const Vector& x, const Rational& h) {
  LpProblem lp = LpProblem::WithVars(inst.p);
  for (std::size_t j = 0; j < inst.m; ++j) {
    Vector row(inst.p);
    for (std::size_t k = 0; k < inst.p; ++k) row[k] = -inst.D(k, j);
    Rational rhs = inst.e[j];
    for (std::size_t i = 0; i < inst.n; ++i) rhs += inst.C(i, j) * x[i];
    lp.AddEq(row, rhs);
  }
  lp.AddLe(inst.d, Dot(inst.g, x) - h);
  return lp;
}

[[noreturn]] void OracleFailure(const std::string& kind,
                                const std::string& msg) {
  throw Error(ErrorCode::kValidation, kind, msg);
}

}  // namespace

OracleResult OracleValue(const DbpInstance& inst) {
  const std::vector<Vector> verts = CachedVertices(inst.D, inst.d);
  if (verts.empty()) OracleFailure("empty_y", "Y has no vertices");
  std::optional<OracleResult> best;
  for (const auto& y : verts) {
    const LpOutcome out = MinOverX(inst, y);
    if (out.status == LpStatus::kInfeasible)
      OracleFailure("infeasible_x", "X is empty");
    if (out.status == LpStatus::kUnbounded)
      OracleFailure("x_unbounded_objective",
                    "objective is unbounded over X at a vertex of Y");
    const Rational z = out.value + Dot(inst.e, y);
    if (!best || z < best->z_core) {
      best = OracleResult{z + inst.z_offset, z, out.solution.values, y, 0};
    }
  }
  best->y_vertices = verts.size();
  return *best;
}

bool OracleSubset(const DbpInstance& inst, const Rational& h) {
  const std::vector<Vector> verts = CachedVertices(inst.D, inst.d);
  for (const auto& y : verts) {
    const LpProblem sys = USystem(inst, y, h);
    if (!StrictFeasibility(sys, sys.le_matrix.rows() - 1)) return false;
  }
  return true;
}

DualityReport CheckDuality(const DbpInstance& inst) {
  DualityReport rep;
  const OracleResult oracle = OracleValue(inst);
  rep.z_core = oracle.z_core;
  const std::vector<Vector> yverts = CachedVertices(inst.D, inst.d);
  const std::vector<Vector> xverts = XVertices(inst);

  // max over u >= 0, -A^T u <= C y + g of e.y - a.u, per Y vertex.
  std::optional<Rational> vy;
  for (const auto& y : yverts) {
    LpProblem lp = USystem(inst, y, 0);
    lp.le_matrix = lp.le_matrix.SelectRows([&] {
      std::vector<std::size_t> rows(inst.n);
      for (std::size_t i = 0; i < inst.n; ++i) rows[i] = i;
      return rows;
    }());
    lp.le_rhs.pop_back();
    lp.sense = Sense::kMaximize;
    for (std::size_t k = 0; k < inst.q; ++k) lp.objective[k] = -inst.a[k];
    const LpOutcome out = SolveLp(lp);
    if (out.status != LpStatus::kOptimal)
      OracleFailure("duality_lp_failed", "dual LP over u is not optimal");
    const Rational val = out.value + Dot(inst.e, y);
    if (!vy || val < *vy) vy = val;
  }
  // max over v >= 0, -D^T v == C^T x + e of g.x - d.v, per X vertex.
  std::optional<Rational> vx;
  for (const auto& x : xverts) {
    LpProblem lp = VSystem(inst, x, 0);
    lp.le_matrix = Matrix(0, inst.p);
    lp.le_rhs.clear();
    lp.sense = Sense::kMaximize;
    for (std::size_t k = 0; k < inst.p; ++k) lp.objective[k] = -inst.d[k];
    const LpOutcome out = SolveLp(lp);
    if (out.status != LpStatus::kOptimal)
      OracleFailure("duality_lp_failed", "dual LP over v is not optimal");
    const Rational val = out.value + Dot(inst.g, x);
    if (!vx || val < *vx) vx = val;
  }
  rep.value_y = *vy;
  rep.value_x = *vx;
  rep.passed = rep.value_y == rep.z_core && rep.value_x == rep.z_core;

  for (const Rational& h : {Rational(rep.z_core - 1), rep.z_core,
                            Rational(rep.z_core + 1)}) {
    DualityCheck chk;
    chk.h = h;
    chk.all_y_consistent = true;
    for (const auto& y : yverts) {
      if (SolveLp(USystem(inst, y, h)).status == LpStatus::kInfeasible) {
        chk.all_y_consistent = false;
        break;
      }
    }
    chk.all_x_consistent = true;
    for (const auto& x : xverts) {
      if (SolveLp(VSystem(inst, x, h)).status == LpStatus::kInfeasible) {
        chk.all_x_consistent = false;
        break;
      }
    }
    if (chk.all_y_consistent != chk.all_x_consistent) rep.passed = false;
    rep.checks.push_back(chk);
  }
  return rep;
}

}  // namespace dbp
