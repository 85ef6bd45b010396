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

#include "solver.hpp"

#include <algorithm>

#include "oracle.hpp"

namespace dbp {

Vector RecoverY(const DbpInstance& inst, const Vector& v) {
  const std::size_t m = inst.m;
  Vector s(m, Rational(0));
  Rational s0 = 0;
  for (std::size_t k = 0; k < inst.p; ++k) {
    if (sgn(v[k]) == 0) continue;
    for (std::size_t j = 0; j < m; ++j) s[j] += v[k] * inst.D(k, j);
    s0 += v[k] * inst.d[k];
  }
  LpProblem lp = YProblem(inst.D, inst.d, Vector(m, Rational(0)),
                          Sense::kMinimize);
  lp.eq_matrix = Matrix(0, m);
  lp.AddEq(s, s0);
  Vector y(m);
  for (std::size_t j = 0; j < m; ++j) {
    lp.objective.assign(m, Rational(0));
    lp.objective[j] = 1;
    const LpOutcome out = SolveLp(lp);
    if (out.status != LpStatus::kOptimal) {
      throw Error(ErrorCode::kDiscrepancy, "infeasible_recovery",
                  "no point of Y meets the recovered equality row");
    }
    y[j] = out.value;
    Vector fix(m, Rational(0));
    fix[j] = 1;
    lp.AddEq(fix, y[j]);
  }
  return y;
}

namespace {

void Note(SolveResult& res, std::string kind, std::string detail) {
  res.discrepancies.push_back({std::move(kind), std::move(detail)});
}

// Runs the criterion and records the probe; internal errors become
// discrepancies.
std::optional<Verdict> RunProbe(const DbpInstance& inst, const Rational& h,
                                SolveResult& res, CriterionOutcome* keep) {
  CriterionOptions opts;
  opts.check_precondition = false;
  try {
    CriterionOutcome out = Algorithm1(inst, h, opts);
    for (const auto& d : out.discrepancies)
      Note(res, d.kind, "h = " + FormatRational(h) + ": " + d.detail);
    res.trace.push_back({h, out.verdict, out.step});
    const Verdict v = out.verdict;
    if (keep) *keep = std::move(out);
    return v;
  } catch (const Error& err) {
    if (err.code() == ErrorCode::kValidation) throw;
    Note(res, err.kind(), "h = " + FormatRational(h) + ": " + err.what());
    return std::nullopt;
  }
}

void FinishPoint(const DbpInstance& inst, SolveResult& res) {
  const Rational z = inst.Objective(*res.x_star, *res.y_star);
  res.z_check = z;
  if (z != *res.h_star + inst.z_offset) {
    Note(res, "objective_mismatch",
         "z(x*, y*) = " + FormatRational(z) + " but h* + offset = " +
             FormatRational(*res.h_star + inst.z_offset));
  }
  Vector c = inst.g;
  for (std::size_t i = 0; i < inst.n; ++i)
    for (std::size_t j = 0; j < inst.m; ++j) c[i] += inst.C(i, j) * (*res.y_star)[j];
  const LpOutcome best = SolveLp(XProblem(inst, c));
  if (best.status != LpStatus::kOptimal ||
      best.value + Dot(inst.e, *res.y_star) !=
          inst.CoreObjective(*res.x_star, *res.y_star)) {
    Note(res, "x_not_optimal_for_y",
         "x* does not minimize the objective at y*");
  }
}

}  // namespace

SolveResult Solve(const DbpInstance& inst, const SolveOptions& options) {
  if (!options.skip_validation) {
    ValidateInstance(inst);
    const PerfectReport perfect = CheckPerfect(inst.D, inst.d);
    if (!perfect.is_perfect) {
      const auto& v = perfect.violations.front();
      throw Error(ErrorCode::kValidation, "not_perfect",
                  std::string("Y is not a perfect polytope: condition ") +
                      v.condition + " (" + v.reason + ")");
    }
  }
  SolveResult res;
  res.L = ComputeL(inst);
  const Integer two_l = Pow2(res.L);
  const Rational eps(Integer(1), Pow2(2 * res.L + 2));
  const std::vector<Vector> yverts = CachedVertices(inst.D, inst.d);
  if (yverts.empty()) {
    throw Error(ErrorCode::kValidation, "empty_y", "Y has no vertices");
  }

  res.mode = "bisection";
  std::optional<Rational> affine_cap;
  if (const auto aff = AffineCase(inst)) {
    const Rational value = aff->value;
    const auto verdict = RunProbe(inst, value - eps, res, nullptr);
    if (verdict == Verdict::kNotSubset) {
      Note(res, "affine_refuted",
           "the affine-case value " + FormatRational(value) +
               " is not optimal over Y");
      affine_cap = value;
    } else {
      res.mode = "affine";
      res.h_star = value;
      res.x_star = aff->solution.values;
      res.y_star = yverts.front();
      res.lo = res.hi = value;
      FinishPoint(inst, res);
      return res;
    }
  }

  Rational lo(-two_l);
  Rational hi(two_l);
  if (options.tighten) {
    const MinimaxBounds mb = ComputeMinimaxBounds(inst);
    hi = std::min({hi, mb.m1, mb.m2});
  }
  if (affine_cap) hi = std::min(hi, *affine_cap);
  res.lo = lo;
  res.hi = hi;
  // Interval width 2^(L+1) shrinks to 2^(-2L-2).
  res.iteration_budget = 3 * res.L + 3;

  if (RunProbe(inst, lo, res, nullptr) != Verdict::kSubset) {
    Note(res, "bound_violation", "criterion rejects the lower end -2^L");
    return res;
  }
  if (RunProbe(inst, hi, res, nullptr) != Verdict::kNotSubset) {
    Note(res, "bound_violation",
         "criterion accepts the upper end " + FormatRational(hi));
    return res;
  }
  while (hi - lo > eps) {
    if (++res.iterations > res.iteration_budget) {
      Note(res, "iteration_budget", "bisection exceeded 3L + 3 halvings");
      return res;
    }
    const Rational mid = (lo + hi) / 2;
    const auto verdict = RunProbe(inst, mid, res, nullptr);
    if (!verdict) return res;
    if (*verdict == Verdict::kNotSubset) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const auto h_star = BestRationalInInterval(lo, hi, two_l);
  if (!h_star) {
    Note(res, "recovery_failed",
         "no rational with denominator <= 2^L in (h1, h2]");
    return res;
  }
  CriterionOutcome final_out;
  if (RunProbe(inst, *h_star, res, &final_out) != Verdict::kNotSubset ||
      !final_out.certificate) {
    Note(res, "recovered_value_rejected",
         "criterion does not reject h* = " + FormatRational(*h_star));
    return res;
  }
  res.h_star = *h_star;
  const Vector& alpha = final_out.certificate->alpha;
  res.x_star = Vector(alpha.begin(), alpha.begin() + inst.n);
  const std::size_t vb = inst.n + inst.q;
  const Vector v(alpha.begin() + vb, alpha.begin() + vb + inst.p);
  try {
    res.y_star = IsZero(v) ? yverts.front() : RecoverY(inst, v);
  } catch (const Error& err) {
    Note(res, err.kind(), err.what());
    return res;
  }
  FinishPoint(inst, res);
  return res;
}

}  // namespace dbp
