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

#include "reductions.hpp"

#include <algorithm>

namespace dbp {

namespace {

void CheckBooleanSystem(const BooleanSystem& bs) {
  if (bs.n == 0 || bs.a.size() != bs.A.rows() ||
      (bs.A.rows() > 0 && bs.A.cols() != bs.n)) {
    throw Error(ErrorCode::kInvalidArgument, "dimension_mismatch",
                "boolean system has inconsistent dimensions");
  }
}

// Unit cube rows y_j <= 1 followed by -y_j <= 0.
void SetUnitCube(DbpInstance& inst, std::size_t n) {
  inst.m = n;
  inst.p = 2 * n;
  inst.D = Matrix(2 * n, n);
  inst.d.assign(2 * n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    inst.D(j, j) = 1;
    inst.d[j] = 1;
    inst.D(n + j, j) = -1;
  }
}

void SetBoxedX(DbpInstance& inst, const BooleanSystem& bs) {
  const std::size_t n = bs.n;
  const std::size_t q0 = bs.A.rows();
  inst.n = n;
  inst.q = q0 + n;
  inst.A = Matrix(q0 + n, n);
  inst.a.assign(q0 + n, Rational(0));
  for (std::size_t i = 0; i < q0; ++i) {
    for (std::size_t j = 0; j < n; ++j) inst.A(i, j) = bs.A(i, j);
    inst.a[i] = bs.a[i];
  }
  for (std::size_t j = 0; j < n; ++j) {
    inst.A(q0 + j, j) = 1;
    inst.a[q0 + j] = 1;
  }
}

Rational MaxAbs(const Vector& v) {
  Rational h = 0;
  for (const auto& x : v) h = std::max<Rational>(h, abs(x));
  return h;
}

}  // namespace

DbpInstance ReduceBooleanFeasibility(const BooleanSystem& bs) {
  CheckBooleanSystem(bs);
  DbpInstance inst;
  SetBoxedX(inst, bs);
  SetUnitCube(inst, bs.n);
  inst.C = Matrix(bs.n, bs.n);
  for (std::size_t j = 0; j < bs.n; ++j) inst.C(j, j) = 2;
  inst.g.assign(bs.n, Rational(-1));
  inst.e.assign(bs.n, Rational(-1));
  inst.z_offset = static_cast<unsigned long>(bs.n);
  return inst;
}

std::size_t BooleanEncodingLength(const Vector& c, const BooleanSystem& bs) {
  CheckBooleanSystem(bs);
  auto clp1 = [](const Rational& r) {
    if (!IsInteger(r)) {
      throw Error(ErrorCode::kValidation, "non_integer_instance",
                  "boolean program needs integer data");
    }
    return CeilLog2Plus1(abs(r.get_num()));
  };
  std::size_t len = 0;
  for (std::size_t i = 0; i < bs.A.rows(); ++i) {
    for (std::size_t j = 0; j < bs.n; ++j) len += clp1(bs.A(i, j));
    len += clp1(bs.a[i]);
  }
  for (const auto& v : c) len += clp1(v);
  len += CeilLog2Plus1(
      Integer(static_cast<unsigned long>(bs.n * (bs.A.rows() + 1))));
  return len;
}

Integer BigM(const Vector& c, const BooleanSystem& bs) {
  const std::size_t l = BooleanEncodingLength(c, bs);
  std::size_t k = 0;
  while (Pow2(k) < bs.n) ++k;
  return Pow2(3 * l + 1 + k);
}

DbpInstance ReduceBooleanLpBigM(const Vector& c, const BooleanSystem& bs) {
  if (c.size() != bs.n) {
    throw Error(ErrorCode::kInvalidArgument, "dimension_mismatch",
                "cost vector length differs from n");
  }
  const Rational big(BigM(c, bs));
  DbpInstance inst;
  SetBoxedX(inst, bs);
  SetUnitCube(inst, bs.n);
  inst.C = Matrix(bs.n, bs.n);
  inst.g.assign(bs.n, Rational(0));
  for (std::size_t j = 0; j < bs.n; ++j) {
    inst.C(j, j) = 2 * big;
    inst.g[j] = c[j] - big;
  }
  inst.e.assign(bs.n, Rational(-big));
  inst.z_offset = big * static_cast<unsigned long>(bs.n);
  return inst;
}

DbpInstance BisectionPlan::InstanceFor(const Integer& t) const {
  BooleanSystem bs = base;
  bs.A.AppendRow(c);
  bs.a.push_back(Rational(t));
  return ReduceBooleanFeasibility(bs);
}

std::optional<Integer> BisectionPlan::Run(
    const std::function<bool(const DbpInstance&)>& feasible_at,
    std::vector<Integer>* probes) const {
  auto probe = [&](const Integer& t) {
    if (probes) probes->push_back(t);
    return feasible_at(InstanceFor(t));
  };
  if (!probe(t_hi)) return std::nullopt;
  Integer lo = t_lo - 1;
  Integer hi = t_hi;
  while (hi - lo > 1) {
    Integer mid;
    Integer sum = lo + hi;
    mpz_fdiv_q_2exp(mid.get_mpz_t(), sum.get_mpz_t(), 1);
    if (probe(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

BisectionPlan PlanBooleanBisection(const Vector& c, const BooleanSystem& bs) {
  CheckBooleanSystem(bs);
  if (c.size() != bs.n) {
    throw Error(ErrorCode::kInvalidArgument, "dimension_mismatch",
                "cost vector length differs from n");
  }
  for (const auto& v : c) {
    if (!IsInteger(v)) {
      throw Error(ErrorCode::kValidation, "non_integer_instance",
                  "bisection plan needs integer costs");
    }
  }
  BisectionPlan plan;
  plan.c = c;
  plan.base = bs;
  const Integer nh = MaxAbs(c).get_num() * static_cast<unsigned long>(bs.n);
  plan.t_lo = -nh;
  plan.t_hi = nh;
  return plan;
}

DbpInstance ReducePlcp(const PlcpProblem& pp) {
  const std::size_t n = pp.n;
  const std::size_t l = pp.groups.size();
  if (n == 0 || l == 0 || pp.a.size() != pp.A.rows() ||
      (pp.A.rows() > 0 && pp.A.cols() != n)) {
    throw Error(ErrorCode::kInvalidArgument, "dimension_mismatch",
                "piecewise-linear problem has inconsistent dimensions");
  }
  std::size_t m = 0;
  for (const auto& grp : pp.groups) {
    if (grp.size() < 2) {
      throw Error(ErrorCode::kValidation, "group_too_small",
                  "every group needs at least two pieces");
    }
    for (const auto& piece : grp) {
      if (piece.c.size() != n) {
        throw Error(ErrorCode::kInvalidArgument, "dimension_mismatch",
                    "piece coefficient vector length differs from n");
      }
    }
    m += grp.size() - 1;
  }
  DbpInstance inst;
  inst.n = n;
  inst.m = m;
  inst.q = pp.A.rows();
  inst.p = l + m;
  inst.A = pp.A;
  inst.a = pp.a;
  inst.C = Matrix(n, m);
  inst.g.assign(n, Rational(0));
  inst.e.assign(m, Rational(0));
  inst.D = Matrix(l + m, m);
  inst.d.assign(l + m, Rational(0));
  std::size_t col = 0;
  for (std::size_t j = 0; j < l; ++j) {
    const auto& grp = pp.groups[j];
    const LinearPiece& last = grp.back();
    for (std::size_t i = 0; i < n; ++i) inst.g[i] += last.c[i];
    inst.z_offset += last.c0;
    inst.d[j] = 1;
    for (std::size_t k = 0; k + 1 < grp.size(); ++k, ++col) {
      for (std::size_t i = 0; i < n; ++i) inst.C(i, col) = grp[k].c[i] - last.c[i];
      inst.e[col] = grp[k].c0 - last.c0;
      inst.D(j, col) = 1;
      inst.D(l + col, col) = -1;
    }
  }
  return inst;
}

Rational PlcpObjective(const PlcpProblem& pp, const Vector& x) {
  Rational total = 0;
  for (const auto& grp : pp.groups) {
    std::optional<Rational> best;
    for (const auto& piece : grp) {
      Rational v = Dot(piece.c, x) + piece.c0;
      if (!best || v < *best) best = v;
    }
    total += *best;
  }
  return total;
}

std::optional<std::vector<bool>> ExtractBoolean(const Vector& x) {
  std::vector<bool> out;
  for (const auto& v : x) {
    if (v == 0) {
      out.push_back(false);
    } else if (v == 1) {
      out.push_back(true);
    } else {
      return std::nullopt;
    }
  }
  return out;
}

}  // namespace dbp
