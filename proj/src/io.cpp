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

#include "io.hpp"

#include <cstdint>
#include <cstdio>
#include <set>

namespace dbp {

namespace {

[[noreturn]] void Schema(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kParse, "schema", where + ": " + what);
}

void LineColumn(std::string_view text, std::size_t byte, std::size_t* line,
                std::size_t* col) {
  *line = 1;
  *col = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++*line;
      *col = 1;
    } else {
      ++*col;
    }
  }
}

std::size_t DimFromJson(const Json& obj, const char* key) {
  if (!obj.contains(key)) Schema(key, "missing key");
  const Json& j = obj.at(key);
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    Schema(key, "expected a non-negative integer");
  return j.get<std::size_t>();
}

const Json& Required(const Json& obj, const char* key) {
  if (!obj.contains(key)) Schema(key, "missing key");
  return obj.at(key);
}

void RejectUnknown(const Json& obj, const std::set<std::string>& allowed,
                   const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      Schema(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
  }
}

Vector VectorFromJson(const Json& j, std::size_t len, const std::string& where) {
  if (!j.is_array()) Schema(where, "expected an array");
  if (j.size() != len)
    Schema(where, "expected " + std::to_string(len) + " entries, found " +
                      std::to_string(j.size()));
  Vector v(len);
  for (std::size_t i = 0; i < len; ++i)
    v[i] = RationalFromJson(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

Matrix MatrixFromJson(const Json& j, std::size_t rows, std::size_t cols,
                      const std::string& where) {
  if (!j.is_array()) Schema(where, "expected an array of rows");
  if (j.size() != rows)
    Schema(where, "expected " + std::to_string(rows) + " rows, found " +
                      std::to_string(j.size()));
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Vector row =
        VectorFromJson(j[i], cols, where + "[" + std::to_string(i) + "]");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = row[k];
  }
  return m;
}

}  // namespace

Json ParseJsonText(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& err) {
    std::size_t line = 0, col = 0;
    LineColumn(text, err.byte, &line, &col);
    throw Error(ErrorCode::kParse, "syntax",
                "JSON syntax error at line " + std::to_string(line) +
                    ", column " + std::to_string(col));
  }
}

Rational RationalFromJson(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(Integer(std::to_string(j.get<std::uint64_t>())));
    return Rational(Integer(std::to_string(j.get<std::int64_t>())));
  }
  if (j.is_string()) {
    try {
      return ParseRational(j.get<std::string>());
    } catch (const Error& err) {
      Schema(where, err.what());
    }
  }
  Schema(where, "expected an integer or a \"p/q\" string");
}

Json RationalToJson(const Rational& r) { return FormatRational(r); }

Json VectorToJson(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(RationalToJson(x));
  return out;
}

Json MatrixToJson(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(VectorToJson(m.Row(i)));
  return out;
}

DbpInstance InstanceFromJson(const Json& j) {
  if (!j.is_object()) Schema("instance", "expected a JSON object");
  RejectUnknown(j, {"kind", "n", "m", "q", "p", "C", "A", "D", "a", "g", "e",
                    "d", "z_offset"},
                "");
  if (j.contains("kind") && j.at("kind") != "dbp")
    Schema("kind", "instance files use kind \"dbp\"");
  DbpInstance inst;
  inst.n = DimFromJson(j, "n");
  inst.m = DimFromJson(j, "m");
  inst.q = DimFromJson(j, "q");
  inst.p = DimFromJson(j, "p");
  inst.C = MatrixFromJson(Required(j, "C"), inst.n, inst.m, "C");
  inst.A = MatrixFromJson(Required(j, "A"), inst.q, inst.n, "A");
  inst.D = MatrixFromJson(Required(j, "D"), inst.p, inst.m, "D");
  inst.a = VectorFromJson(Required(j, "a"), inst.q, "a");
  inst.g = VectorFromJson(Required(j, "g"), inst.n, "g");
  inst.e = VectorFromJson(Required(j, "e"), inst.m, "e");
  inst.d = VectorFromJson(Required(j, "d"), inst.p, "d");
  if (j.contains("z_offset"))
    inst.z_offset = RationalFromJson(j.at("z_offset"), "z_offset");
  return inst;
}

DbpInstance ParseInstance(std::string_view text) {
  return InstanceFromJson(ParseJsonText(text));
}

Json InstanceToJson(const DbpInstance& inst) {
  Json j;
  j["n"] = inst.n;
  j["m"] = inst.m;
  j["q"] = inst.q;
  j["p"] = inst.p;
  j["C"] = MatrixToJson(inst.C);
  j["A"] = MatrixToJson(inst.A);
  j["D"] = MatrixToJson(inst.D);
  j["a"] = VectorToJson(inst.a);
  j["g"] = VectorToJson(inst.g);
  j["e"] = VectorToJson(inst.e);
  j["d"] = VectorToJson(inst.d);
  j["z_offset"] = RationalToJson(inst.z_offset);
  return j;
}

std::string SerializeInstance(const DbpInstance& inst) {
  return InstanceToJson(inst).dump(2) + "\n";
}

namespace {

BooleanSystem BooleanFromJson(const Json& j) {
  BooleanSystem bs;
  bs.n = DimFromJson(j, "n");
  const std::size_t q = DimFromJson(j, "q");
  bs.A = MatrixFromJson(Required(j, "A"), q, bs.n, "A");
  bs.a = VectorFromJson(Required(j, "a"), q, "a");
  return bs;
}

}  // namespace

ReductionInput ParseReductionInput(std::string_view text) {
  const Json j = ParseJsonText(text);
  if (!j.is_object()) Schema("input", "expected a JSON object");
  const Json& kind = Required(j, "kind");
  if (!kind.is_string()) Schema("kind", "expected a string");
  ReductionInput in;
  in.kind = kind.get<std::string>();
  if (in.kind == "boolean") {
    RejectUnknown(j, {"kind", "n", "q", "A", "a"}, "");
    in.boolean = BooleanFromJson(j);
  } else if (in.kind == "boolean-lp") {
    RejectUnknown(j, {"kind", "n", "q", "A", "a", "c"}, "");
    in.boolean = BooleanFromJson(j);
    in.cost = VectorFromJson(Required(j, "c"), in.boolean.n, "c");
  } else if (in.kind == "plcp") {
    RejectUnknown(j, {"kind", "n", "q", "A", "a", "groups"}, "");
    in.plcp.n = DimFromJson(j, "n");
    const std::size_t q = DimFromJson(j, "q");
    in.plcp.A = MatrixFromJson(Required(j, "A"), q, in.plcp.n, "A");
    in.plcp.a = VectorFromJson(Required(j, "a"), q, "a");
    const Json& groups = Required(j, "groups");
    if (!groups.is_array()) Schema("groups", "expected an array");
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const std::string gw = "groups[" + std::to_string(g) + "]";
      if (!groups[g].is_array()) Schema(gw, "expected an array of pieces");
      std::vector<LinearPiece> pieces;
      for (std::size_t k = 0; k < groups[g].size(); ++k) {
        const Json& pc = groups[g][k];
        const std::string pw = gw + "[" + std::to_string(k) + "]";
        if (!pc.is_object()) Schema(pw, "expected an object");
        RejectUnknown(pc, {"c", "c0"}, pw);
        LinearPiece piece;
        piece.c = VectorFromJson(Required(pc, "c"), in.plcp.n, pw + ".c");
        piece.c0 = RationalFromJson(Required(pc, "c0"), pw + ".c0");
        pieces.push_back(std::move(piece));
      }
      in.plcp.groups.push_back(std::move(pieces));
    }
  } else {
    Schema("kind", "unknown reduction kind '" + in.kind + "'");
  }
  return in;
}

Json ReductionInputToJson(const ReductionInput& in) {
  Json j;
  j["kind"] = in.kind;
  if (in.kind == "plcp") {
    j["n"] = in.plcp.n;
    j["q"] = in.plcp.A.rows();
    j["A"] = MatrixToJson(in.plcp.A);
    j["a"] = VectorToJson(in.plcp.a);
    Json groups = Json::array();
    for (const auto& grp : in.plcp.groups) {
      Json pieces = Json::array();
      for (const auto& pc : grp) {
        Json pj;
        pj["c"] = VectorToJson(pc.c);
        pj["c0"] = RationalToJson(pc.c0);
        pieces.push_back(pj);
      }
      groups.push_back(pieces);
    }
    j["groups"] = groups;
    return j;
  }
  j["n"] = in.boolean.n;
  j["q"] = in.boolean.A.rows();
  j["A"] = MatrixToJson(in.boolean.A);
  j["a"] = VectorToJson(in.boolean.a);
  if (in.kind == "boolean-lp") j["c"] = VectorToJson(in.cost);
  return j;
}

DbpInstance Reduce(const ReductionInput& in) {
  if (in.kind == "boolean") return ReduceBooleanFeasibility(in.boolean);
  if (in.kind == "boolean-lp") return ReduceBooleanLpBigM(in.cost, in.boolean);
  if (in.kind == "plcp") return ReducePlcp(in.plcp);
  throw Error(ErrorCode::kInvalidArgument, "unknown_kind",
              "unknown reduction kind '" + in.kind + "'");
}

Json DiscrepanciesToJson(const std::vector<Discrepancy>& list) {
  if (list.empty()) return nullptr;
  Json out = Json::array();
  for (const auto& d : list) {
    Json j;
    j["kind"] = d.kind;
    j["detail"] = d.detail;
    out.push_back(j);
  }
  return out;
}

namespace {

template <typename T, typename F>
Json Optional(const std::optional<T>& v, F&& f) {
  if (!v) return nullptr;
  return f(*v);
}

}  // namespace

Json SolveResultToJson(const SolveResult& res) {
  Json j;
  j["h_star"] = Optional(res.h_star, RationalToJson);
  j["x_star"] = Optional(res.x_star, VectorToJson);
  j["y_star"] = Optional(res.y_star, VectorToJson);
  j["z_check"] = Optional(res.z_check, RationalToJson);
  j["mode"] = res.mode;
  Json trace = Json::array();
  for (const auto& p : res.trace) {
    Json t;
    t["h"] = RationalToJson(p.h);
    t["verdict"] = VerdictName(p.verdict);
    t["step"] = p.step;
    trace.push_back(t);
  }
  j["trace"] = trace;
  j["discrepancy"] = DiscrepanciesToJson(res.discrepancies);
  j["L"] = res.L;
  j["iterations"] = res.iterations;
  j["iteration_budget"] = res.iteration_budget;
  j["interval"] = {RationalToJson(res.lo), RationalToJson(res.hi)};
  return j;
}

Json OracleResultToJson(const OracleResult& res) {
  Json j;
  j["z_star"] = RationalToJson(res.z_star);
  j["z_core"] = RationalToJson(res.z_core);
  j["x"] = VectorToJson(res.x);
  j["y"] = VectorToJson(res.y);
  j["y_vertices"] = res.y_vertices;
  return j;
}

Json CriterionOutcomeToJson(const CriterionOutcome& out, const Rational& h) {
  Json j;
  j["h"] = RationalToJson(h);
  j["verdict"] = VerdictName(out.verdict);
  j["step"] = out.step;
  if (out.certificate) {
    Json c;
    c["alpha"] = VectorToJson(out.certificate->alpha);
    c["basis"] = out.certificate->basis;
    c["repaired"] = out.certificate->repaired;
    j["certificate"] = c;
  } else {
    j["certificate"] = nullptr;
  }
  j["k"] = out.k;
  j["unbounded_rows"] = out.unbounded_rows;
  Json ts = Json::array();
  for (const auto& t : out.t_stars) ts.push_back(RationalToJson(t));
  j["t_stars"] = ts;
  j["discrepancy"] = DiscrepanciesToJson(out.discrepancies);
  return j;
}

Json PerfectReportToJson(const PerfectReport& rep) {
  Json j;
  j["is_perfect"] = rep.is_perfect;
  Json vs = Json::array();
  for (const auto& v : rep.violations) {
    Json vj;
    vj["condition"] = std::string(1, v.condition);
    vj["reason"] = v.reason;
    vj["rows"] = v.rows;
    vj["point"] = Optional(v.point, VectorToJson);
    vs.push_back(vj);
  }
  j["violations"] = vs;
  j["redundant_rows"] = rep.redundant_rows;
  Json verts = Json::array();
  for (const auto& v : rep.vertices) verts.push_back(VectorToJson(v));
  j["vertices"] = verts;
  return j;
}

Json DualityReportToJson(const DualityReport& rep) {
  Json j;
  j["z_core"] = RationalToJson(rep.z_core);
  j["value_y"] = RationalToJson(rep.value_y);
  j["value_x"] = RationalToJson(rep.value_x);
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json cj;
    cj["h"] = RationalToJson(c.h);
    cj["all_y_consistent"] = c.all_y_consistent;
    cj["all_x_consistent"] = c.all_x_consistent;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["passed"] = rep.passed;
  return j;
}

std::string InstanceHash(const DbpInstance& inst) {
  const std::string text = InstanceToJson(inst).dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dbp
