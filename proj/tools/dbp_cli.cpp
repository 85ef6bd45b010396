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

// Command-line front end over the dbp C interface.
//
// Exit codes: 0 success, 1 usage or parse error, 2 validation failure,
// 3 recorded discrepancy.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dbp/dbp.h"

namespace {

int ExitCode(dbp_status status) {
  switch (status) {
    case DBP_OK:
      return 0;
    case DBP_ERR_PARSE:
    case DBP_ERR_INVALID_ARGUMENT:
      return 1;
    case DBP_ERR_VALIDATION:
      return 2;
    case DBP_ERR_DISCREPANCY:
    case DBP_ERR_INTERNAL:
      return 3;
  }
  return 3;
}

void PrintError(dbp_status status) {
  std::cerr << "error";
  const std::string kind = dbp_last_error_kind();
  if (!kind.empty()) std::cerr << " [" << kind << "]";
  std::cerr << ": " << dbp_last_error() << "\n";
  (void)status;
}

bool ReadFile(const std::string& path, std::string* text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::stringstream buf;
  buf << in.rdbuf();
  *text = buf.str();
  return true;
}

bool WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

// Prints the report, persists it under `out_dir` and maps the status.
int Finish(dbp_status status, dbp_report* report, const std::string& out_dir,
           const std::string& artifact) {
  if (report) {
    std::cout << dbp_report_json(report);
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      const auto path = std::filesystem::path(out_dir) / artifact;
      if (!WriteFile(path, dbp_report_json(report))) {
        std::cerr << "error: cannot write " << path.string() << "\n";
      }
    }
    dbp_report_free(report);
  }
  if (status != DBP_OK) PrintError(status);
  return ExitCode(status);
}

std::string Stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

struct Loaded {
  dbp_instance* inst = nullptr;
  ~Loaded() { dbp_instance_free(inst); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver and checkers for disjoint bilinear programs"};
  app.require_subcommand(1);
  std::string out_dir;
  app.add_option("--out", out_dir, "Directory for persisted reports")
      ->envname("DBP_OUT_DIR");

  std::string file;
  auto* solve = app.add_subcommand("solve", "Solve an instance by bisection");
  solve->add_option("file", file, "Instance file")->required();
  bool skip_validation = false;
  bool no_tighten = false;
  solve->add_flag("--skip-validation", skip_validation,
                  "Do not check validity and perfectness first");
  solve->add_flag("--no-tighten", no_tighten,
                  "Start from [-2^L, 2^L] without minimax bounds");

  auto* oracle = app.add_subcommand("oracle", "Brute-force optimum by vertex enumeration");
  oracle->add_option("file", file, "Instance file")->required();

  std::string h;
  bool allow_affine = false;
  auto* subset = app.add_subcommand("check-subset", "Run the subset criterion at level h");
  subset->set_help_flag("--help", "Print this help message and exit");
  subset->add_option("file", file, "Instance file")->required();
  subset->add_option("--h", h, "Level as p/q on the offset-free objective")->required();
  subset->add_flag("--allow-affine", allow_affine,
                   "Run even when C^T x = -e is feasible over X");

  auto* perfect = app.add_subcommand("check-perfect", "Check that Y is a perfect polytope");
  perfect->add_option("file", file, "Instance file")->required();

  std::string kind;
  std::string output;
  auto* reduce = app.add_subcommand("reduce", "Reduce a problem to an instance");
  reduce->add_option("kind", kind, "boolean, boolean-lp or plcp")
      ->required()
      ->check(CLI::IsMember({"boolean", "boolean-lp", "plcp"}));
  reduce->add_option("file", file, "Input file")->required();
  reduce->add_option("-o,--output", output, "Instance file to write")->required();

  std::string config;
  auto* fuzz = app.add_subcommand("fuzz", "Run a seeded falsification campaign");
  fuzz->add_option("--config", config, "Campaign configuration file")->required();

  auto* duality = app.add_subcommand("duality", "Check the duality identities");
  duality->add_option("file", file, "Instance file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }

  if (*reduce) {
    std::string text;
    if (!ReadFile(file, &text)) {
      std::cerr << "error: cannot open " << file << "\n";
      return 1;
    }
    dbp_instance* inst = nullptr;
    const dbp_status st = dbp_reduce(kind.c_str(), text.c_str(), &inst);
    if (st != DBP_OK) {
      std::cerr << file << ": ";
      PrintError(st);
      return ExitCode(st);
    }
    dbp_report* json = nullptr;
    dbp_instance_json(inst, &json);
    const bool ok = WriteFile(output, dbp_report_json(json));
    dbp_report_free(json);
    dbp_instance_free(inst);
    if (!ok) {
      std::cerr << "error: cannot write " << output << "\n";
      return 1;
    }
    return 0;
  }

  if (*fuzz) {
    std::string text;
    if (!ReadFile(config, &text)) {
      std::cerr << "error: cannot open " << config << "\n";
      return 1;
    }
    dbp_report* report = nullptr;
    const dbp_status st = dbp_fuzz(text.c_str(), out_dir.c_str(), &report);
    // The library persists the campaign itself.
    return Finish(st, report, "", "");
  }

  Loaded loaded;
  const dbp_status load = dbp_instance_load(file.c_str(), &loaded.inst);
  if (load != DBP_OK) {
    PrintError(load);
    return ExitCode(load);
  }
  dbp_report* report = nullptr;
  if (*solve) {
    dbp_solve_options opts;
    dbp_solve_options_init(&opts);
    opts.skip_validation = skip_validation ? 1 : 0;
    opts.tighten = no_tighten ? 0 : 1;
    const dbp_status st = dbp_solve(loaded.inst, &opts, &report);
    return Finish(st, report, out_dir, Stem(file) + ".solve.json");
  }
  if (*oracle) {
    const dbp_status st = dbp_oracle(loaded.inst, &report);
    return Finish(st, report, out_dir, Stem(file) + ".oracle.json");
  }
  if (*subset) {
    const dbp_status st =
        dbp_check_subset(loaded.inst, h.c_str(), allow_affine ? 1 : 0, &report);
    return Finish(st, report, out_dir, Stem(file) + ".subset.json");
  }
  if (*perfect) {
    const dbp_status st = dbp_check_perfect(loaded.inst, &report);
    return Finish(st, report, out_dir, Stem(file) + ".perfect.json");
  }
  const dbp_status st = dbp_duality(loaded.inst, &report);
  (void)duality;
  return Finish(st, report, out_dir, Stem(file) + ".duality.json");
}
