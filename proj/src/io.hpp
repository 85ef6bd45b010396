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

// JSON text formats for instances, reduction inputs and reports.

#ifndef DBP_IO_HPP_
#define DBP_IO_HPP_

#include <string>
#include <string_view>

#include "criterion.hpp"
#include "instance.hpp"
#include "oracle.hpp"
#include "reductions.hpp"
#include "solver.hpp"
#include "json.hpp"

namespace dbp {

using Json = nlohmann::ordered_json;

// Syntax errors carry "line L, column C"; schema errors name the key.
// Both throw Error(kParse, ...).
Json ParseJsonText(std::string_view text);

Rational RationalFromJson(const Json& j, const std::string& where);
Json RationalToJson(const Rational& r);
Json VectorToJson(const Vector& v);
Json MatrixToJson(const Matrix& m);

DbpInstance InstanceFromJson(const Json& j);
DbpInstance ParseInstance(std::string_view text);
Json InstanceToJson(const DbpInstance& inst);
std::string SerializeInstance(const DbpInstance& inst);

// Reduction inputs, tagged by "kind".
struct ReductionInput {
  std::string kind;  // "boolean", "boolean-lp" or "plcp"
  BooleanSystem boolean;
  Vector cost;
  PlcpProblem plcp;
};

ReductionInput ParseReductionInput(std::string_view text);
Json ReductionInputToJson(const ReductionInput& in);
DbpInstance Reduce(const ReductionInput& in);

Json SolveResultToJson(const SolveResult& res);
Json OracleResultToJson(const OracleResult& res);
Json CriterionOutcomeToJson(const CriterionOutcome& out, const Rational& h);
Json PerfectReportToJson(const PerfectReport& rep);
Json DualityReportToJson(const DualityReport& rep);
Json DiscrepanciesToJson(const std::vector<Discrepancy>& list);

// 64-bit FNV-1a of the canonical instance text, as 16 hex digits.
std::string InstanceHash(const DbpInstance& inst);

}  // namespace dbp

#endif  // DBP_IO_HPP_
