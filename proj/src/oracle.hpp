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

// Brute-force reference computations by vertex enumeration.

#ifndef DBP_ORACLE_HPP_
#define DBP_ORACLE_HPP_

#include <vector>

#include "exact_math.hpp"
#include "instance.hpp"

namespace dbp {

// Vertices of Y, memoized on the exact contents of (D, d).
std::vector<Vector> CachedVertices(const Matrix& D, const Vector& d);

// Vertices of X = {x >= 0 : A x <= a}.
std::vector<Vector> XVertices(const DbpInstance& inst);

struct OracleResult {
  Rational z_star;  // includes z_offset
  Rational z_core;  // excludes z_offset
  Vector x;
  Vector y;
  std::size_t y_vertices = 0;
};

OracleResult OracleValue(const DbpInstance& inst);

// Y subset of Y_h, with h on the offset-free objective: for every vertex y
// the system -A^T u <= C y + g, a.u < e.y - h, u >= 0 is solvable.
bool OracleSubset(const DbpInstance& inst, const Rational& h);

struct DualityCheck {
  Rational h;
  bool all_y_consistent = false;  // weak dual system at every Y vertex
  bool all_x_consistent = false;  // equality-form system at every X vertex
};

struct DualityReport {
  Rational z_core;
  Rational value_y;  // min over Y vertices of max over u
  Rational value_x;  // min over X vertices of max over v
  std::vector<DualityCheck> checks;
  bool passed = false;
};

DualityReport CheckDuality(const DbpInstance& inst);

}  // namespace dbp

#endif  // DBP_ORACLE_HPP_
