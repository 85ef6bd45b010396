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

#include "dbp/dbp.h"

#include <exception>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "campaign.hpp"
#include "criterion.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "solver.hpp"

struct dbp_instance {
  dbp::DbpInstance value;
};

struct dbp_report {
  std::string json;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_error_kind;

dbp_status SetError(dbp_status status, std::string kind, std::string message) {
  g_error_kind = std::move(kind);
  g_error = std::move(message);
  return status;
}

dbp_status FromCode(dbp::ErrorCode code) {
  switch (code) {
    case dbp::ErrorCode::kParse:
      return DBP_ERR_PARSE;
    case dbp::ErrorCode::kValidation:
      return DBP_ERR_VALIDATION;
    case dbp::ErrorCode::kDiscrepancy:
      return DBP_ERR_DISCREPANCY;
    case dbp::ErrorCode::kInvalidArgument:
      return DBP_ERR_INVALID_ARGUMENT;
    case dbp::ErrorCode::kInternal:
      return DBP_ERR_INTERNAL;
  }
  return DBP_ERR_INTERNAL;
}

template <typename Fn>
dbp_status Guard(Fn&& fn) {
  try {
    g_error.clear();
    g_error_kind.clear();
    return fn();
  } catch (const dbp::Error& err) {
    return SetError(FromCode(err.code()), err.kind(), err.what());
  } catch (const std::bad_alloc&) {
    return SetError(DBP_ERR_INTERNAL, "out_of_memory", "out of memory");
  } catch (const std::exception& err) {
    return SetError(DBP_ERR_INTERNAL, "internal", err.what());
  }
}

dbp_status NullArg(const char* what) {
  return SetError(DBP_ERR_INVALID_ARGUMENT, "null_argument",
                  std::string(what) + " must not be NULL");
}

dbp_report* MakeReport(const dbp::Json& j) {
  return new dbp_report{j.dump(2) + "\n"};
}

}  // namespace

extern "C" {

const char* dbp_version(void) { return "1.0.0"; }

const char* dbp_last_error(void) { return g_error.c_str(); }

const char* dbp_last_error_kind(void) { return g_error_kind.c_str(); }

dbp_status dbp_instance_parse(const char* json_text, dbp_instance** out) {
  if (!json_text || !out) return NullArg("argument");
  *out = nullptr;
  return Guard([&] {
    *out = new dbp_instance{dbp::ParseInstance(json_text)};
    return DBP_OK;
  });
}

dbp_status dbp_instance_load(const char* path, dbp_instance** out) {
  if (!path || !out) return NullArg("argument");
  *out = nullptr;
  return Guard([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      return SetError(DBP_ERR_PARSE, "io_error",
                      std::string("cannot open ") + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      *out = new dbp_instance{dbp::ParseInstance(buf.str())};
    } catch (const dbp::Error& err) {
      throw dbp::Error(err.code(), err.kind(), std::string(path) + ": " + err.what());
    }
    return DBP_OK;
  });
}

void dbp_instance_free(dbp_instance* inst) { delete inst; }

dbp_status dbp_instance_dims(const dbp_instance* inst, size_t* n, size_t* m,
                             size_t* q, size_t* p) {
  if (!inst) return NullArg("instance");
  if (n) *n = inst->value.n;
  if (m) *m = inst->value.m;
  if (q) *q = inst->value.q;
  if (p) *p = inst->value.p;
  return DBP_OK;
}

dbp_status dbp_instance_json(const dbp_instance* inst, dbp_report** out) {
  if (!inst || !out) return NullArg("argument");
  *out = nullptr;
  return Guard([&] {
    *out = new dbp_report{dbp::SerializeInstance(inst->value)};
    return DBP_OK;
  });
}

dbp_status dbp_reduce(const char* kind, const char* json_text,
                      dbp_instance** out) {
  if (!json_text || !out) return NullArg("argument");
  *out = nullptr;
  return Guard([&] {
    const dbp::ReductionInput in = dbp::ParseReductionInput(json_text);
    if (kind && in.kind != kind) {
      return SetError(DBP_ERR_PARSE, "kind_mismatch",
                      "input kind '" + in.kind + "' differs from '" + kind + "'");
    }
    *out = new dbp_instance{dbp::Reduce(in)};
    return DBP_OK;
  });
}

void dbp_solve_options_init(dbp_solve_options* options) {
  if (!options) return;
  options->skip_validation = 0;
  options->tighten = 1;
}

dbp_status dbp_solve(const dbp_instance* inst, const dbp_solve_options* options,
                     dbp_report** out) {
  if (!inst || !out) return NullArg("argument");
  *out = nullptr;
  return Guard([&] {
    dbp::SolveOptions so;
    if (options) {
      so.skip_validation = options->skip_validation != 0;
      so.tighten = options->tighten != 0;
    }
    const dbp::SolveResult res = dbp::Solve(inst->value, so);
    *out = MakeReport(dbp::SolveResultToJson(res));
    if (!res.discrepancies.empty()) {
      return SetError(DBP_ERR_DISCREPANCY, res.discrepancies.front().kind,
                      res.discrepancies.front().detail);
    }
    return DBP_OK;
  });
}

dbp_status dbp_oracle(const dbp_instance* inst, dbp_report** out) {
  if (!inst || !out) return NullArg("argument");
  *out = nullptr;
  return Guard([&] {
    dbp::ValidateInstance(inst->value);
    *out = MakeReport(dbp::OracleResultToJson(dbp::OracleValue(inst->value)));
    return DBP_OK;
  });
}

dbp_status dbp_check_subset(const dbp_instance* inst, const char* h,
                            int allow_affine, dbp_report** out) {
  if (!inst || !h || !out) return NullArg("argument");
  *out = nullptr;
  return Guard([&] {
    const dbp::Rational level = dbp::ParseRational(h);
    dbp::ValidateInstance(inst->value);
    const dbp::PerfectReport perfect = dbp::CheckPerfect(inst->value.D, inst->value.d);
    if (!perfect.is_perfect) {
      return SetError(DBP_ERR_VALIDATION, "not_perfect",
                      "Y is not a perfect polytope");
    }
    dbp::CriterionOptions opts;
    opts.check_precondition = allow_affine == 0;
    const dbp::CriterionOutcome res = dbp::Algorithm1(inst->value, level, opts);
    *out = MakeReport(dbp::CriterionOutcomeToJson(res, level));
    if (!res.discrepancies.empty()) {
      return SetError(DBP_ERR_DISCREPANCY, res.discrepancies.front().kind,
                      res.discrepancies.front().detail);
    }
    return DBP_OK;
  });
}

dbp_status dbp_check_perfect(const dbp_instance* inst, dbp_report** out) {
  if (!inst || !out) return NullArg("argument");
  *out = nullptr;
  return Guard([&] {
    const dbp::PerfectReport rep = dbp::CheckPerfect(inst->value.D, inst->value.d);
    *out = MakeReport(dbp::PerfectReportToJson(rep));
    if (!rep.is_perfect) {
      return SetError(DBP_ERR_VALIDATION, "not_perfect",
                      "Y is not a perfect polytope");
    }
    return DBP_OK;
  });
}

dbp_status dbp_duality(const dbp_instance* inst, dbp_report** out) {
  if (!inst || !out) return NullArg("argument");
  *out = nullptr;
  return Guard([&] {
    dbp::ValidateInstance(inst->value);
    const dbp::DualityReport rep = dbp::CheckDuality(inst->value);
    *out = MakeReport(dbp::DualityReportToJson(rep));
    if (!rep.passed) {
      return SetError(DBP_ERR_DISCREPANCY, "duality_failed",
                      "duality identities do not hold");
    }
    return DBP_OK;
  });
}

dbp_status dbp_fuzz(const char* config_json, const char* out_dir,
                    dbp_report** out) {
  if (!config_json || !out) return NullArg("argument");
  *out = nullptr;
  return Guard([&] {
    const dbp::CampaignConfig cfg = dbp::ParseCampaignConfig(config_json);
    const dbp::CampaignResult res =
        dbp::RunCampaign(cfg, out_dir ? std::string(out_dir) : std::string());
    *out = MakeReport(res.report);
    if (res.disagreements > 0) {
      return SetError(DBP_ERR_DISCREPANCY, "campaign_disagreements",
                      std::to_string(res.disagreements) +
                          " disagreements recorded");
    }
    return DBP_OK;
  });
}

const char* dbp_report_json(const dbp_report* report) {
  return report ? report->json.c_str() : "";
}

void dbp_report_free(dbp_report* report) { delete report; }

}  // extern "C"
