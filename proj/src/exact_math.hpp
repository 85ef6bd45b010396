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

#ifndef DBP_EXACT_MATH_HPP_
#define DBP_EXACT_MATH_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dbp {

using Integer = mpz_class;
using Rational = mpq_class;
using Vector = std::vector<Rational>;

enum class ErrorCode {
  kParse = 1,
  kValidation = 2,
  kDiscrepancy = 3,
  kInvalidArgument = 4,
  kInternal = 5,
};

// Every library failure is reported through this exception. The `kind`
// string is a stable machine-readable tag such as "rank_deficient".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string kind, const std::string& message)
      : std::runtime_error(message), code_(code), kind_(std::move(kind)) {}
  ErrorCode code() const { return code_; }
  const std::string& kind() const { return kind_; }

 private:
  ErrorCode code_;
  std::string kind_;
};

// Dense row-major matrix of rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix FromRows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  Vector Row(std::size_t i) const;
  Vector Col(std::size_t j) const;
  Matrix Transposed() const;
  Matrix SelectRows(const std::vector<std::size_t>& rows) const;
  void AppendRow(const Vector& row);
  Vector Apply(const Vector& x) const;
  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Rational Dot(const Vector& a, const Vector& b);
bool IsZero(const Vector& v);
bool IsInteger(const Rational& r);

// Solves M x = b for square M. Returns nullopt when M is singular.
std::optional<Vector> SolveSquareSystem(const Matrix& m, const Vector& b);

std::size_t Rank(const Matrix& m);

// Smallest t >= 0 with 2^t >= v + 1, for v >= 0.
std::size_t CeilLog2Plus1(const Integer& v);

// The unique rational of least denominator (ties broken by least absolute
// numerator) in the half-open interval (lo, hi], provided its denominator
// does not exceed `den_bound`.
std::optional<Rational> BestRationalInInterval(const Rational& lo,
                                               const Rational& hi,
                                               const Integer& den_bound);

// Same search on the closed interval [lo, hi].
Rational SimplestInClosedInterval(const Rational& lo, const Rational& hi);

// Text form "p/q", or "p" when q == 1.
std::string FormatRational(const Rational& r);

// Accepts "p", "p/q", "-p/q" with q != 0. Throws Error(kParse).
Rational ParseRational(std::string_view text);

Integer Pow2(std::size_t exponent);

// n choose k, saturating at `cap + 1`.
std::size_t BinomialCapped(std::size_t n, std::size_t k, std::size_t cap);

// Visits every k-subset of {0..n-1} in lexicographic order. The callback
// returns false to stop early.
template <typename Fn>
void ForEachSubset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(static_cast<const std::vector<std::size_t>&>(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace dbp

#endif  // DBP_EXACT_MATH_HPP_
