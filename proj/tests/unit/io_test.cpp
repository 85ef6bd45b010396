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

#include <string>

#include "doctest.h"
#include "io.hpp"
#include "oracles.hpp"
#include "solver.hpp"

using namespace dbp;
using testing::Mat;
using testing::Vec;

namespace {

const char* kCube = R"({
  "n": 1, "m": 1, "q": 1, "p": 2,
  "C": [[1]], "A": [[1]], "a": [1], "g": [-1], "e": [1],
  "D": [[1], [-1]], "d": [1, 0]
})";

std::string ErrorOf(const std::string& text, ErrorCode* code = nullptr) {
  try {
    ParseInstance(text);
  } catch (const Error& err) {
    if (code) *code = err.code();
    return err.kind() + ": " + err.what();
  }
  return "";
}

}  // namespace

TEST_CASE("instance round trip") {
  const DbpInstance inst = ParseInstance(kCube);
  CHECK(inst.n == 1);
  CHECK(inst.p == 2);
  CHECK(inst.d == Vec({1, 0}));
  CHECK(inst.z_offset == 0);
  const std::string text = SerializeInstance(inst);
  const DbpInstance back = ParseInstance(text);
  CHECK(SerializeInstance(back) == text);
  CHECK(InstanceHash(back) == InstanceHash(inst));
  CHECK(InstanceHash(inst).size() == 16);
}

TEST_CASE("key order is stable") {
  const std::string text = SerializeInstance(ParseInstance(kCube));
  const char* keys[] = {"\"n\"", "\"m\"", "\"q\"", "\"p\"", "\"C\"", "\"A\"",
                        "\"D\"", "\"a\"", "\"g\"", "\"e\"", "\"d\"", "\"z_offset\""};
  std::size_t last = 0;
  for (const char* k : keys) {
    const std::size_t pos = text.find(k);
    REQUIRE(pos != std::string::npos);
    CHECK(pos >= last);
    last = pos;
  }
}

TEST_CASE("rational entries") {
  const DbpInstance inst = ParseInstance(R"({
    "kind": "dbp", "n": 1, "m": 1, "q": 1, "p": 2,
    "C": [["-3/6"]], "A": [[1]], "a": ["5/2"], "g": [0], "e": [0],
    "D": [[1], [-1]], "d": [1, 0], "z_offset": "1/3"
  })");
  Rational half(-1, 2);
  CHECK(inst.C(0, 0) == half);
  CHECK(inst.a[0] == Rational(5, 2));
  CHECK(inst.z_offset == Rational(1, 3));
  CHECK(RationalToJson(inst.C(0, 0)) == "-1/2");
  CHECK(RationalToJson(Rational(4)) == "4");
  CHECK(RationalFromJson(Json("7/14"), "x") == Rational(1, 2));
  CHECK(RationalFromJson(Json(-8), "x") == -8);
}

TEST_CASE("schema errors") {
  ErrorCode code{};
  CHECK(ErrorOf(R"({"n": 1})", &code).rfind("schema", 0) == 0);
  CHECK(code == ErrorCode::kParse);

  std::string unknown = kCube;
  unknown.insert(1, "\"extra\": 1,");
  CHECK(ErrorOf(unknown).find("extra") != std::string::npos);

  std::string kind = kCube;
  kind.insert(1, "\"kind\": \"plcp\",");
  CHECK(ErrorOf(kind).rfind("schema", 0) == 0);

  std::string shape = kCube;
  shape.replace(shape.find("\"a\": [1]"), 8, "\"a\": [1, 2]");
  CHECK(ErrorOf(shape).find("a") != std::string::npos);
  CHECK_FALSE(ErrorOf(shape).empty());

  std::string bad = kCube;
  bad.replace(bad.find("\"g\": [-1]"), 9, "\"g\": [1.5]");
  CHECK(ErrorOf(bad).rfind("schema", 0) == 0);

  std::string zero = kCube;
  zero.replace(zero.find("\"g\": [-1]"), 9, "\"g\": [\"1/0\"]");
  CHECK(ErrorOf(zero).rfind("schema", 0) == 0);
}

TEST_CASE("syntax errors carry line and column") {
  const std::string err = ErrorOf("{\n  \"n\": 1,\n  \"m\" 2\n}");
  CHECK(err.rfind("syntax", 0) == 0);
  CHECK(err.find("line 3") != std::string::npos);
  CHECK(err.find("column") != std::string::npos);
}

TEST_CASE("reduction inputs") {
  const ReductionInput b = ParseReductionInput(
      R"({"kind": "boolean", "n": 2, "q": 1, "A": [[1, 1]], "a": [1]})");
  CHECK(b.kind == "boolean");
  CHECK(b.boolean.n == 2);
  CHECK(ParseReductionInput(ReductionInputToJson(b).dump()).boolean.a == Vec({1}));
  CHECK(Reduce(b).n == 2);

  const ReductionInput lp = ParseReductionInput(
      R"({"kind": "boolean-lp", "n": 1, "q": 1, "A": [[2]], "a": [1], "c": [1]})");
  CHECK(lp.cost == Vec({1}));
  CHECK(ReductionInputToJson(lp).contains("c"));

  const ReductionInput pl = ParseReductionInput(R"({
    "kind": "plcp", "n": 1, "q": 1, "A": [[1]], "a": [1],
    "groups": [[{"c": [1], "c0": 0}, {"c": [-1], "c0": "1/2"}]]
  })");
  REQUIRE(pl.plcp.groups.size() == 1);
  CHECK(pl.plcp.groups[0][1].c0 == Rational(1, 2));
  const ReductionInput again = ParseReductionInput(ReductionInputToJson(pl).dump());
  CHECK(again.plcp.groups[0][1].c == Vec({-1}));

  for (const char* text :
       {R"({"kind": "sat", "n": 1})", R"({"n": 1})",
        R"({"kind": "boolean", "n": 1, "q": 0, "A": [], "a": [], "c": [1]})"}) {
    try {
      ParseReductionInput(text);
      FAIL("expected a schema error");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::kParse);
    }
  }
}

TEST_CASE("result serialization") {
  const SolveResult res = Solve(ParseInstance(kCube));
  const Json j = SolveResultToJson(res);
  CHECK(j.contains("h_star"));
  CHECK(j.dump().find("\"-1\"") != std::string::npos);
  CHECK(DiscrepanciesToJson({{"a", "b"}}).at(0).at("kind") == "a");
}
