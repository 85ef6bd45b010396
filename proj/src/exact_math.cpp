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

#include "exact_math.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace dbp {

Matrix Matrix::FromRows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw Error(ErrorCode::kInvalidArgument, "dimension_mismatch",
                  "matrix row has wrong length");
    }
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vector Matrix::Row(std::size_t i) const {
  return Vector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

Vector Matrix::Col(std::size_t j) const {
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix Matrix::Transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::SelectRows(const std::vector<std::size_t>& rows) const {
  Matrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(rows[i], j);
  return out;
}

void Matrix::AppendRow(const Vector& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) {
    throw Error(ErrorCode::kInvalidArgument, "dimension_mismatch",
                "appended row has wrong length");
  }
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

Vector Matrix::Apply(const Vector& x) const {
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    out[i] = s;
  }
  return out;
}

Rational Dot(const Vector& a, const Vector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool IsZero(const Vector& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Rational& r) { return sgn(r) == 0; });
}

bool IsInteger(const Rational& r) { return r.get_den() == 1; }

std::optional<Vector> SolveSquareSystem(const Matrix& m, const Vector& b) {
  const std::size_t n = m.rows();
  Matrix a(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n) = b[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a(piv, col)) == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col)
      for (std::size_t j = col; j <= n; ++j) std::swap(a(piv, j), a(col, j));
    const Rational inv = 1 / a(col, col);
    for (std::size_t j = col; j <= n; ++j) a(col, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || sgn(a(i, col)) == 0) continue;
      const Rational f = a(i, col);
      for (std::size_t j = col; j <= n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a(i, n);
  return x;
}

std::size_t Rank(const Matrix& m) {
  Matrix a = m;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < a.rows() && sgn(a(piv, col)) == 0) ++piv;
    if (piv == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(rank, j));
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      if (sgn(a(i, col)) == 0) continue;
      const Rational f = a(i, col) / a(rank, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

std::size_t CeilLog2Plus1(const Integer& v) {
  if (sgn(v) < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative_argument",
                "ceil_log2_plus1 expects a non-negative integer");
  }
  if (sgn(v) == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

namespace {

Integer Floor(const Rational& r) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

// Simplest rational in the interval with endpoints lo < hi (hi may be
// infinite). Both endpoints are non-negative and zero is excluded.
Rational SimplestPositive(const Rational& lo, bool lo_closed,
                          const std::optional<Rational>& hi, bool hi_closed) {
  const Integer fl = Floor(lo);
  if (lo_closed && IsInteger(lo)) return lo;
  const Rational next(fl + 1);
  if (!hi || next < *hi || (next == *hi && hi_closed)) return next;
  // No integer inside: the interval lies in [fl, fl + 1].
  const Rational frac_lo = lo - fl;
  const Rational frac_hi = *hi - fl;
  std::optional<Rational> inv_hi;
  if (sgn(frac_lo) > 0) inv_hi = 1 / frac_lo;
  const Rational inv_lo = 1 / frac_hi;
  const Rational inner = SimplestPositive(inv_lo, hi_closed, inv_hi, lo_closed);
  return Rational(fl) + 1 / inner;
}

Rational Simplest(const Rational& lo, bool lo_closed, const Rational& hi,
                  bool hi_closed) {
  const bool zero_in = (sgn(lo) < 0 || (sgn(lo) == 0 && lo_closed)) &&
                       (sgn(hi) > 0 || (sgn(hi) == 0 && hi_closed));
  if (zero_in) return 0;
  if (sgn(hi) <= 0) {
    Rational r = -SimplestPositive(-hi, hi_closed, Rational(-lo), lo_closed);
    return r;
  }
  return SimplestPositive(lo, lo_closed, hi, hi_closed);
}

}  // namespace

std::optional<Rational> BestRationalInInterval(const Rational& lo,
                                               const Rational& hi,
                                               const Integer& den_bound) {
  if (!(lo < hi)) return std::nullopt;
  Rational r = Simplest(lo, false, hi, true);
  if (r.get_den() > den_bound) return std::nullopt;
  return r;
}

Rational SimplestInClosedInterval(const Rational& lo, const Rational& hi) {
  if (lo == hi) return lo;
  if (hi < lo) {
    throw Error(ErrorCode::kInvalidArgument, "empty_interval",
                "interval lower end exceeds upper end");
  }
  return Simplest(lo, true, hi, true);
}

std::string FormatRational(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

bool ParseIntegerText(std::string_view s, bool allow_sign, Integer* out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  std::string digits(s.substr(s[0] == '+' ? 1 : 0));
  return out->set_str(digits, 10) == 0;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  const auto slash = text.find('/');
  Integer num, den = 1;
  bool ok = false;
  if (slash == std::string_view::npos) {
    ok = ParseIntegerText(text, true, &num);
  } else {
    ok = ParseIntegerText(text.substr(0, slash), true, &num) &&
         ParseIntegerText(text.substr(slash + 1), false, &den);
  }
  if (!ok) {
    throw Error(ErrorCode::kParse, "bad_rational",
                "malformed rational '" + std::string(text) + "'");
  }
  if (sgn(den) == 0) {
    throw Error(ErrorCode::kParse, "zero_denominator",
                "zero denominator in '" + std::string(text) + "'");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer Pow2(std::size_t exponent) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, exponent);
  return out;
}

std::size_t BinomialCapped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Integer acc = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    acc *= static_cast<unsigned long>(n - k + i);
    acc /= static_cast<unsigned long>(i);
  }
  if (acc > cap) return cap + 1;
  return acc.get_ui();
}

}  // namespace dbp
