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

// C interface of the dbp library: exact solvers and checkers for disjoint
// bilinear programs
//
//   min  x^T C y + g x + e y + z_offset
//   s.t. x >= 0, A x <= a,  D y <= d.
//
// Instances and reports are opaque handles. Reports carry JSON text. Every
// function returns a dbp_status; on failure dbp_last_error() describes the
// problem for the calling thread.

#ifndef DBP_DBP_H_
#define DBP_DBP_H_

#include <stddef.h>

#if defined(_WIN32)
#define DBP_API __declspec(dllexport)
#else
#define DBP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dbp_status {
  DBP_OK = 0,
  DBP_ERR_PARSE = 1,
  DBP_ERR_VALIDATION = 2,
  DBP_ERR_DISCREPANCY = 3,
  DBP_ERR_INVALID_ARGUMENT = 4,
  DBP_ERR_INTERNAL = 5
} dbp_status;

typedef struct dbp_instance dbp_instance;
typedef struct dbp_report dbp_report;

typedef struct dbp_solve_options {
  int skip_validation;  // nonzero skips the validity and perfectness checks
  int tighten;          // nonzero caps the bisection interval by minimax bounds
} dbp_solve_options;

DBP_API const char* dbp_version(void);

// Message and machine-readable kind of the calling thread's last failure.
DBP_API const char* dbp_last_error(void);
DBP_API const char* dbp_last_error_kind(void);

DBP_API dbp_status dbp_instance_parse(const char* json_text, dbp_instance** out);
DBP_API dbp_status dbp_instance_load(const char* path, dbp_instance** out);
DBP_API void dbp_instance_free(dbp_instance* inst);
DBP_API dbp_status dbp_instance_dims(const dbp_instance* inst, size_t* n,
                                     size_t* m, size_t* q, size_t* p);
// Canonical JSON text of the instance.
DBP_API dbp_status dbp_instance_json(const dbp_instance* inst, dbp_report** out);

// Reduces a "boolean", "boolean-lp" or "plcp" input document. When `kind`
// is not NULL the document's "kind" tag must match it.
DBP_API dbp_status dbp_reduce(const char* kind, const char* json_text,
                              dbp_instance** out);

DBP_API void dbp_solve_options_init(dbp_solve_options* options);

// Functions below that return DBP_ERR_DISCREPANCY or, for
// dbp_check_perfect, DBP_ERR_VALIDATION still fill *out with a report.
DBP_API dbp_status dbp_solve(const dbp_instance* inst,
                             const dbp_solve_options* options, dbp_report** out);
DBP_API dbp_status dbp_oracle(const dbp_instance* inst, dbp_report** out);
// `h` is a rational in "p/q" form on the offset-free objective.
DBP_API dbp_status dbp_check_subset(const dbp_instance* inst, const char* h,
                                    int allow_affine, dbp_report** out);
DBP_API dbp_status dbp_check_perfect(const dbp_instance* inst, dbp_report** out);
DBP_API dbp_status dbp_duality(const dbp_instance* inst, dbp_report** out);
// `out_dir` may be NULL or empty to embed reproducers in the report.
DBP_API dbp_status dbp_fuzz(const char* config_json, const char* out_dir,
                            dbp_report** out);

DBP_API const char* dbp_report_json(const dbp_report* report);
DBP_API void dbp_report_free(dbp_report* report);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // DBP_DBP_H_
