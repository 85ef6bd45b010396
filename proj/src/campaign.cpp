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

#include "campaign.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <thread>

#include "criterion.hpp"
#include "oracle.hpp"
#include "reductions.hpp"
#include "solver.hpp"

namespace dbp {

namespace {

const std::set<std::string> kFamilies = {"cube", "simplex", "step_diagonal",
                                         "boolean", "plcp"};

[[noreturn]] void ConfigError(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kParse, "schema", where + ": " + what);
}

std::size_t SizeField(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    ConfigError(key, "expected a non-negative integer");
  return v.get<std::size_t>();
}

Range RangeField(const Json& j, const char* key) {
  const Json& v = j.at(key);
  Range r;
  if (v.is_number_integer()) {
    r.lo = r.hi = SizeField(j, key);
  } else if (v.is_array() && v.size() == 2 && v[0].is_number_integer() &&
             v[1].is_number_integer()) {
    r.lo = v[0].get<std::size_t>();
    r.hi = v[1].get<std::size_t>();
  } else {
    ConfigError(key, "expected an integer or a [lo, hi] pair");
  }
  if (r.lo == 0 || r.lo > r.hi) ConfigError(key, "expected 1 <= lo <= hi");
  return r;
}

}  // namespace

CampaignConfig ParseCampaignConfig(std::string_view text) {
  const Json j = ParseJsonText(text);
  if (!j.is_object()) ConfigError("config", "expected a JSON object");
  const std::set<std::string> allowed = {
      "seed",  "count",  "families",      "family",       "n",       "m",
      "q",     "coefficient_bound", "random_probes", "solve", "workers",
      "subset_guard"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) ConfigError(it.key(), "unknown key");
  CampaignConfig cfg;
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) ConfigError("seed", "expected an integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("count")) cfg.count = SizeField(j, "count");
  for (const char* key : {"family", "families"}) {
    if (!j.contains(key)) continue;
    const Json& v = j.at(key);
    cfg.families.clear();
    if (v.is_string()) {
      cfg.families.push_back(v.get<std::string>());
    } else if (v.is_array() && !v.empty()) {
      for (const auto& f : v) {
        if (!f.is_string()) ConfigError(key, "expected family names");
        cfg.families.push_back(f.get<std::string>());
      }
    } else {
      ConfigError(key, "expected a family name or a list of names");
    }
  }
  for (const auto& f : cfg.families)
    if (!kFamilies.count(f)) ConfigError("families", "unknown family '" + f + "'");
  if (j.contains("n")) cfg.n = RangeField(j, "n");
  if (j.contains("m")) cfg.m = RangeField(j, "m");
  if (j.contains("q")) cfg.q = RangeField(j, "q");
  if (j.contains("coefficient_bound")) {
    cfg.coefficient_bound =
        static_cast<std::int64_t>(SizeField(j, "coefficient_bound"));
    if (cfg.coefficient_bound < 1)
      ConfigError("coefficient_bound", "expected a positive integer");
  }
  if (j.contains("random_probes")) cfg.random_probes = SizeField(j, "random_probes");
  if (j.contains("solve")) {
    if (!j.at("solve").is_boolean()) ConfigError("solve", "expected a boolean");
    cfg.solve = j.at("solve").get<bool>();
  }
  if (j.contains("workers")) cfg.workers = std::max<std::size_t>(1, SizeField(j, "workers"));
  if (j.contains("subset_guard")) cfg.subset_guard = SizeField(j, "subset_guard");
  return cfg;
}

Json CampaignConfigToJson(const CampaignConfig& cfg) {
  Json j;
  j["seed"] = cfg.seed;
  j["count"] = cfg.count;
  j["families"] = cfg.families;
  j["n"] = {cfg.n.lo, cfg.n.hi};
  j["m"] = {cfg.m.lo, cfg.m.hi};
  j["q"] = {cfg.q.lo, cfg.q.hi};
  j["coefficient_bound"] = cfg.coefficient_bound;
  j["random_probes"] = cfg.random_probes;
  j["solve"] = cfg.solve;
  j["subset_guard"] = cfg.subset_guard;
  return j;
}

std::int64_t Rng::Uniform(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % span + 1) % span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x > limit);
  return lo + static_cast<std::int64_t>(x % span);
}

namespace {

std::size_t Draw(Rng& rng, const Range& r) {
  return static_cast<std::size_t>(
      rng.Uniform(static_cast<std::int64_t>(r.lo), static_cast<std::int64_t>(r.hi)));
}

Rational Coef(Rng& rng, std::int64_t bound) {
  return Rational(static_cast<long>(rng.Uniform(-bound, bound)));
}

// X = {x >= 0 : 1.x <= b, further random rows with non-negative rhs}.
void RandomX(Rng& rng, const CampaignConfig& cfg, std::size_t n, DbpInstance& inst) {
  const std::size_t q = Draw(rng, cfg.q);
  inst.n = n;
  inst.q = q;
  inst.A = Matrix(q, n);
  inst.a.assign(q, Rational(0));
  for (std::size_t j = 0; j < n; ++j) inst.A(0, j) = 1;
  inst.a[0] = static_cast<long>(rng.Uniform(1, cfg.coefficient_bound));
  for (std::size_t i = 1; i < q; ++i) {
    for (std::size_t j = 0; j < n; ++j) inst.A(i, j) = Coef(rng, cfg.coefficient_bound);
    inst.a[i] = static_cast<long>(rng.Uniform(0, cfg.coefficient_bound));
  }
}

void RandomObjective(Rng& rng, std::int64_t bound, DbpInstance& inst) {
  inst.C = Matrix(inst.n, inst.m);
  for (std::size_t i = 0; i < inst.n; ++i)
    for (std::size_t j = 0; j < inst.m; ++j) inst.C(i, j) = Coef(rng, bound);
  inst.g.resize(inst.n);
  for (auto& v : inst.g) v = Coef(rng, bound);
  inst.e.resize(inst.m);
  for (auto& v : inst.e) v = Coef(rng, bound);
}

void Box(Rng& rng, std::size_t m, std::int64_t bound, DbpInstance& inst) {
  inst.m = m;
  inst.p = 2 * m;
  inst.D = Matrix(2 * m, m);
  inst.d.assign(2 * m, Rational(0));
  for (std::size_t j = 0; j < m; ++j) {
    const std::int64_t lo = rng.Uniform(-1, 0);
    const std::int64_t hi = lo + rng.Uniform(1, bound);
    inst.D(j, j) = 1;
    inst.d[j] = static_cast<long>(hi);
    inst.D(m + j, j) = -1;
    inst.d[m + j] = static_cast<long>(-lo);
  }
}

void Simplex(Rng& rng, std::size_t m, std::int64_t bound, DbpInstance& inst) {
  inst.m = m;
  inst.p = m + 1;
  inst.D = Matrix(m + 1, m);
  inst.d.assign(m + 1, Rational(0));
  for (std::size_t j = 0; j < m; ++j) {
    inst.D(j, j) = -1;
    inst.D(m, j) = 1;
  }
  inst.d[m] = static_cast<long>(rng.Uniform(1, bound));
}

// Group sums <= 1 followed by -y <= 0.
void StepDiagonal(Rng& rng, std::size_t m, DbpInstance& inst) {
  std::vector<std::size_t> sizes;
  std::size_t left = m;
  while (left > 0) {
    const std::size_t s = 1 + rng.Index(left);
    sizes.push_back(s);
    left -= s;
  }
  const std::size_t l = sizes.size();
  inst.m = m;
  inst.p = l + m;
  inst.D = Matrix(l + m, m);
  inst.d.assign(l + m, Rational(0));
  std::size_t col = 0;
  for (std::size_t g = 0; g < l; ++g) {
    inst.d[g] = 1;
    for (std::size_t k = 0; k < sizes[g]; ++k, ++col) {
      inst.D(g, col) = 1;
      inst.D(l + col, col) = -1;
    }
  }
}

bool XNonEmpty(const BooleanSystem& bs) {
  DbpInstance probe;
  probe.n = bs.n;
  probe.q = bs.A.rows() + bs.n;
  probe.A = bs.A;
  probe.a = bs.a;
  for (std::size_t j = 0; j < bs.n; ++j) {
    Vector row(bs.n, Rational(0));
    row[j] = 1;
    probe.A.AppendRow(row);
    probe.a.push_back(1);
  }
  return SolveLp(XProblem(probe, Vector(bs.n, Rational(0)))).status !=
         LpStatus::kInfeasible;
}

DbpInstance RandomBoolean(Rng& rng, const CampaignConfig& cfg) {
  const std::size_t n = Draw(rng, cfg.n);
  const std::int64_t b = std::min<std::int64_t>(2, cfg.coefficient_bound);
  for (int attempt = 0; attempt < 64; ++attempt) {
    BooleanSystem bs;
    bs.n = n;
    const std::size_t q = rng.Index(cfg.q.hi + 1);
    bs.A = Matrix(q, n);
    bs.a.assign(q, Rational(0));
    for (std::size_t i = 0; i < q; ++i) {
      for (std::size_t j = 0; j < n; ++j) bs.A(i, j) = Coef(rng, b);
      bs.a[i] = Coef(rng, b);
    }
    if (XNonEmpty(bs)) return ReduceBooleanFeasibility(bs);
  }
  BooleanSystem empty;
  empty.n = n;
  empty.A = Matrix(0, n);
  return ReduceBooleanFeasibility(empty);
}

DbpInstance RandomPlcp(Rng& rng, const CampaignConfig& cfg) {
  DbpInstance x;
  RandomX(rng, cfg, Draw(rng, cfg.n), x);
  PlcpProblem pp;
  pp.n = x.n;
  pp.A = x.A;
  pp.a = x.a;
  const std::size_t m_target = Draw(rng, cfg.m);
  std::size_t m = 0;
  while (m < m_target) {
    const std::size_t pieces = 2 + (m + 2 <= m_target ? rng.Index(2) : 0);
    std::vector<LinearPiece> grp;
    for (std::size_t k = 0; k < pieces; ++k) {
      LinearPiece pc;
      pc.c.resize(pp.n);
      for (auto& v : pc.c) v = Coef(rng, cfg.coefficient_bound);
      pc.c0 = Coef(rng, cfg.coefficient_bound);
      grp.push_back(std::move(pc));
    }
    m += pieces - 1;
    pp.groups.push_back(std::move(grp));
  }
  return ReducePlcp(pp);
}

std::uint64_t InstanceSeed(std::uint64_t seed, std::size_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

GeneratedInstance GenerateInstance(const CampaignConfig& cfg, std::size_t index) {
  Rng rng(InstanceSeed(cfg.seed, index));
  GeneratedInstance out;
  out.family = cfg.families[index % cfg.families.size()];
  DbpInstance& inst = out.instance;
  if (out.family == "boolean") {
    inst = RandomBoolean(rng, cfg);
  } else if (out.family == "plcp") {
    inst = RandomPlcp(rng, cfg);
  } else {
    RandomX(rng, cfg, Draw(rng, cfg.n), inst);
    const std::size_t m = Draw(rng, cfg.m);
    if (out.family == "cube") {
      Box(rng, m, cfg.coefficient_bound, inst);
    } else if (out.family == "simplex") {
      Simplex(rng, m, cfg.coefficient_bound, inst);
    } else {
      StepDiagonal(rng, m, inst);
    }
    RandomObjective(rng, cfg.coefficient_bound, inst);
  }
  return out;
}

namespace {

struct Reproducer {
  std::string tag;
  DbpInstance instance;
  Json record;
};

struct Evaluation {
  Json row;
  std::vector<Reproducer> repros;
  std::size_t disagreements = 0;
  std::size_t soundness_violations = 0;
};

std::string CheckSubsetCommand(const Rational& h, bool affine) {
  std::string cmd = "check-subset {instance} --h " + FormatRational(h);
  if (affine) cmd += " --allow-affine";
  return cmd;
}

Evaluation Evaluate(const CampaignConfig& cfg, std::size_t index) {
  Evaluation ev;
  const GeneratedInstance gen = GenerateInstance(cfg, index);
  const DbpInstance& inst = gen.instance;
  Json& row = ev.row;
  row["index"] = index;
  row["family"] = gen.family;
  row["hash"] = InstanceHash(inst);
  row["dims"] = {inst.n, inst.m, inst.q, inst.p};
  if (BinomialCapped(inst.p, inst.m, cfg.subset_guard) > cfg.subset_guard) {
    row["status"] = "skipped_guard";
    return ev;
  }
  try {
    ValidateInstance(inst);
    if (!CheckPerfect(inst.D, inst.d).is_perfect) {
      row["status"] = "not_perfect";
      return ev;
    }
  } catch (const Error& err) {
    row["status"] = std::string("invalid_") + err.kind();
    return ev;
  }
  row["status"] = "ok";
  const OracleResult oracle = OracleValue(inst);
  const Rational& z = oracle.z_core;
  row["oracle_z_star"] = RationalToJson(oracle.z_star);
  row["oracle_z_core"] = RationalToJson(z);
  const bool affine = AffineCase(inst).has_value();
  row["affine"] = affine;

  Rng rng(InstanceSeed(cfg.seed ^ 0x5DEECE66DULL, index));
  std::vector<Rational> hs = {z - 1, z - Rational(1, 2), z, z + Rational(1, 2),
                              z + 1};
  for (std::size_t k = 0; k < cfg.random_probes; ++k) {
    const std::int64_t den = rng.Uniform(1, 8);
    const std::int64_t num = rng.Uniform(-4 * den, 4 * den);
    Rational offset(static_cast<long>(num), static_cast<unsigned long>(den));
    offset.canonicalize();
    hs.push_back(z + offset);
  }
  Json probes = Json::array();
  for (std::size_t k = 0; k < hs.size(); ++k) {
    const Rational& h = hs[k];
    Json pr;
    pr["h"] = RationalToJson(h);
    const Verdict truth = OracleSubset(inst, h) ? Verdict::kSubset : Verdict::kNotSubset;
    pr["oracle"] = VerdictName(truth);
    std::string got;
    try {
      CriterionOptions opts;
      opts.check_precondition = false;
      const CriterionOutcome out = Algorithm1(inst, h, opts);
      got = VerdictName(out.verdict);
      pr["step"] = out.step;
      pr["internal_discrepancies"] = out.discrepancies.size();
      if (out.verdict == Verdict::kNotSubset && truth == Verdict::kSubset)
        ++ev.soundness_violations;
    } catch (const Error& err) {
      got = std::string("error:") + err.kind();
      pr["step"] = nullptr;
      pr["internal_discrepancies"] = 0;
    }
    pr["criterion"] = got;
    const bool agree = got == VerdictName(truth);
    pr["agree"] = agree;
    if (!agree) {
      ++ev.disagreements;
      Json rec;
      rec["command"] = CheckSubsetCommand(h, affine);
      rec["expected"] = VerdictName(truth);
      rec["actual"] = got;
      ev.repros.push_back({"probe" + std::to_string(k), inst, rec});
    }
    probes.push_back(pr);
  }
  row["probes"] = probes;

  if (cfg.solve) {
    Json sj;
    try {
      SolveOptions so;
      so.skip_validation = true;
      const SolveResult res = Solve(inst, so);
      sj["mode"] = res.mode;
      sj["h_star"] = res.h_star ? RationalToJson(*res.h_star) : Json(nullptr);
      sj["L"] = res.L;
      sj["iterations"] = res.iterations;
      sj["iteration_budget"] = res.iteration_budget;
      sj["discrepancies"] = res.discrepancies.size();
      Json kinds = Json::array();
      for (const auto& d : res.discrepancies) kinds.push_back(d.kind);
      sj["discrepancy_kinds"] = kinds;
      bool bits_ok = true;
      if (res.h_star) {
        const Integer bound = Pow2(res.L);
        bits_ok = abs(res.h_star->get_num()) <= bound &&
                  res.h_star->get_den() <= bound;
      }
      sj["bit_size_ok"] = bits_ok;
      std::optional<Rational> max_sub, min_not;
      for (const auto& p : res.trace) {
        if (p.verdict == Verdict::kSubset) {
          if (!max_sub || p.h > *max_sub) max_sub = p.h;
        } else if (!min_not || p.h < *min_not) {
          min_not = p.h;
        }
      }
      sj["trace_monotone"] = !max_sub || !min_not || *max_sub < *min_not;
      sj["within_budget"] = res.mode == "affine" || res.iterations <= res.iteration_budget;
      const bool value_agree = res.h_star && *res.h_star == z;
      sj["value_agree"] = value_agree;
      const bool agree = value_agree && res.discrepancies.empty();
      sj["agree"] = agree;
      if (!agree) {
        ++ev.disagreements;
        Json rec;
        rec["command"] = "solve {instance}";
        rec["expected"] = RationalToJson(z);
        rec["actual"] = res.h_star ? RationalToJson(*res.h_star) : Json(nullptr);
        rec["discrepancy"] = DiscrepanciesToJson(res.discrepancies);
        ev.repros.push_back({"solve", inst, rec});
      }
    } catch (const Error& err) {
      sj["error"] = err.kind();
      sj["agree"] = false;
      ++ev.disagreements;
    }
    row["solve"] = sj;
  }
  return ev;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    throw Error(ErrorCode::kInvalidArgument, "io_error",
                "cannot write " + path.string());
  }
}

}  // namespace

CampaignResult RunCampaign(const CampaignConfig& cfg, const std::string& out_dir) {
  std::vector<Evaluation> evals(cfg.count);
  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(cfg.count);
  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.count; i = next++) {
      try {
        evals[i] = Evaluate(cfg, i);
      } catch (const std::exception& err) {
        errors[i] = err.what();
      }
    }
  };
  const std::size_t nworkers = std::min(cfg.workers, std::max<std::size_t>(1, cfg.count));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < nworkers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  CampaignResult result;
  Json rows = Json::array();
  Json repro_list = Json::array();
  std::size_t evaluated = 0, probes = 0, probe_agree = 0, solves = 0,
              solve_agree = 0, value_agree = 0, solver_discrepancies = 0, affine = 0,
              non_monotone = 0, bit_size_violations = 0, over_budget = 0;
  std::map<std::string, std::size_t> statuses;
  std::map<std::string, std::array<std::size_t, 3>> families;
  for (std::size_t i = 0; i < cfg.count; ++i) {
    Evaluation& ev = evals[i];
    if (!errors[i].empty()) {
      ev.row["index"] = i;
      ev.row["status"] = "internal_error";
      ev.row["error"] = errors[i];
      ++ev.disagreements;
    }
    const std::string status = ev.row.value("status", "internal_error");
    ++statuses[status];
    const std::string family = ev.row.value("family", "unknown");
    auto& fam = families[family];
    ++fam[0];
    result.disagreements += ev.disagreements;
    result.soundness_violations += ev.soundness_violations;
    fam[1] += ev.disagreements;
    fam[2] += ev.soundness_violations;
    if (status == "ok") {
      ++evaluated;
      if (ev.row.value("affine", false)) ++affine;
      for (const auto& pr : ev.row["probes"]) {
        ++probes;
        if (pr["agree"].get<bool>()) ++probe_agree;
      }
      if (ev.row.contains("solve")) {
        ++solves;
        const Json& sj = ev.row["solve"];
        if (sj["agree"].get<bool>()) ++solve_agree;
        if (sj.value("value_agree", false)) ++value_agree;
        if (!sj.value("trace_monotone", true)) ++non_monotone;
        if (!sj.value("bit_size_ok", true)) ++bit_size_violations;
        if (!sj.value("within_budget", true)) ++over_budget;
        if (sj.contains("discrepancies") && sj["discrepancies"].get<std::size_t>() > 0)
          ++solver_discrepancies;
      }
    }
    Json files = Json::array();
    for (auto& rp : ev.repros) {
      char stem[64];
      std::snprintf(stem, sizeof stem, "repro-%04zu-%s", i, rp.tag.c_str());
      const std::string inst_name = std::string(stem) + ".json";
      const std::string rec_name = std::string(stem) + ".record.json";
      std::string cmd = rp.record["command"].get<std::string>();
      cmd.replace(cmd.find("{instance}"), 10, inst_name);
      rp.record["command"] = cmd;
      Json entry;
      entry["instance_file"] = inst_name;
      entry["record_file"] = rec_name;
      entry["command"] = cmd;
      Json record;
      record["instance_file"] = inst_name;
      record["index"] = i;
      record["family"] = family;
      for (auto it = rp.record.begin(); it != rp.record.end(); ++it)
        record[it.key()] = it.value();
      if (out_dir.empty()) {
        entry["instance"] = InstanceToJson(rp.instance);
        entry["record"] = record;
      } else {
        const std::filesystem::path dir(out_dir);
        WriteFile(dir / inst_name, SerializeInstance(rp.instance));
        WriteFile(dir / rec_name, record.dump(2) + "\n");
        result.files.push_back((dir / inst_name).string());
        result.files.push_back((dir / rec_name).string());
      }
      files.push_back(inst_name);
      repro_list.push_back(entry);
    }
    ev.row["reproducers"] = files;
    rows.push_back(ev.row);
  }
  Json summary;
  summary["instances"] = cfg.count;
  summary["evaluated"] = evaluated;
  Json st;
  for (const auto& [k, v] : statuses) st[k] = v;
  summary["status_counts"] = st;
  summary["affine_instances"] = affine;
  summary["probes"] = probes;
  summary["probe_agreements"] = probe_agree;
  summary["solves"] = solves;
  summary["solve_agreements"] = solve_agree;
  summary["solve_value_agreements"] = value_agree;
  summary["solver_discrepancies"] = solver_discrepancies;
  summary["non_monotone_traces"] = non_monotone;
  summary["bit_size_violations"] = bit_size_violations;
  summary["over_budget"] = over_budget;
  summary["disagreements"] = result.disagreements;
  summary["soundness_violations"] = result.soundness_violations;
  Json fams;
  for (const auto& [k, v] : families) {
    Json f;
    f["instances"] = v[0];
    f["disagreements"] = v[1];
    f["soundness_violations"] = v[2];
    fams[k] = f;
  }
  summary["by_family"] = fams;

  Json& rep = result.report;
  rep["config"] = CampaignConfigToJson(cfg);
  rep["summary"] = summary;
  rep["reproducers"] = repro_list;
  rep["instances"] = rows;
  if (!out_dir.empty()) {
    const std::filesystem::path path = std::filesystem::path(out_dir) / "campaign.json";
    WriteFile(path, rep.dump(2) + "\n");
    result.files.push_back(path.string());
  }
  return result;
}

}  // namespace dbp
