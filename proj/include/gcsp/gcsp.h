// Copyright 2026 The gcsp Authors
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


/* C interface to the gcsp library. Objects are opaque handles; rich results
 * are returned as JSON strings owned by the caller and released with
 * gcsp_string_free. Every function returns a gcsp_status; on failure the
 * message is available from gcsp_last_error() on the same thread. */

#ifndef GCSP_GCSP_H_
#define GCSP_GCSP_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define GCSP_API __declspec(dllexport)
#else
#define GCSP_API __attribute__((visibility("default")))
#endif

typedef enum gcsp_status {
  GCSP_OK = 0,
  GCSP_ERR_INPUT = 2,    /* malformed input, bad arguments, unreadable file */
  GCSP_ERR_CAPACITY = 3, /* problem exceeds a size cap */
  GCSP_ERR_NUMERIC = 4,  /* numerical failure */
  GCSP_ERR_INTERNAL = 5
} gcsp_status;

typedef struct gcsp_instance gcsp_instance;
typedef struct gcsp_solution gcsp_solution;
typedef struct gcsp_gadget gcsp_gadget;

GCSP_API const char* gcsp_version(void);
/* Message of the last failed call on this thread; empty after success. */
GCSP_API const char* gcsp_last_error(void);
GCSP_API void gcsp_string_free(char* s);

/* Instances. `path` may name an edge list or a JSON instance (".json"). */
GCSP_API gcsp_status gcsp_instance_load(const char* path, gcsp_instance** out);
GCSP_API gcsp_status gcsp_instance_parse_edges(const char* text, gcsp_instance** out);
GCSP_API gcsp_status gcsp_instance_from_json(const char* json, gcsp_instance** out);
/* `generator_json` keys: family, n, seed, p, epsilon, edges, kind, kind_parameter. */
GCSP_API gcsp_status gcsp_instance_generate(const char* generator_json, gcsp_instance** out);
GCSP_API gcsp_status gcsp_instance_to_json(const gcsp_instance* instance, char** out);
GCSP_API gcsp_status gcsp_instance_size(const gcsp_instance* instance, int* n, int* terms);
/* `values` holds n domain values (0 or 1). */
GCSP_API gcsp_status gcsp_instance_evaluate(const gcsp_instance* instance, const int* values,
                                            int n, double* value);
GCSP_API void gcsp_instance_free(gcsp_instance* instance);

/* Relaxation program as JSON; `literal` selects the (subset, assignment)
 * form instead of the reduced monomial form that the solver uses. */
GCSP_API gcsp_status gcsp_relaxation_to_json(const gcsp_instance* instance, int level,
                                             int literal, char** out);

/* Solves the level-`level` relaxation. `config_json` may be NULL; `report`
 * may be NULL. */
GCSP_API gcsp_status gcsp_solve(const gcsp_instance* instance, int level, const char* config_json,
                                gcsp_solution** out, char** report);
GCSP_API gcsp_status gcsp_solution_from_json(const char* json, gcsp_solution** out);
GCSP_API gcsp_status gcsp_solution_to_json(const gcsp_solution* solution, char** out);
GCSP_API gcsp_status gcsp_solution_level(const gcsp_solution* solution, int* level);
GCSP_API gcsp_status gcsp_solution_objective(const gcsp_solution* solution,
                                             const gcsp_instance* instance, double* value);
/* Feasibility report JSON (PSD, consistency, cardinality). */
GCSP_API gcsp_status gcsp_solution_check(const gcsp_solution* solution,
                                         const gcsp_instance* instance, char** report);
/* Average pairwise mutual information summary. */
GCSP_API gcsp_status gcsp_solution_independence(const gcsp_solution* solution,
                                                const gcsp_instance* instance, char** out);
GCSP_API void gcsp_solution_free(gcsp_solution* solution);

/* Conditioning, rounding and repair on a solved relaxation. `config_json`
 * keys: trials, seed, delta_cap, alpha, depth, strategy, include_diagonal. */
GCSP_API gcsp_status gcsp_round(const gcsp_solution* solution, const gcsp_instance* instance,
                                const char* config_json, char** result);
/* Solve plus round in one call; `config_json` also accepts level and solver. */
GCSP_API gcsp_status gcsp_pipeline(const gcsp_instance* instance, const char* config_json,
                                   char** result);

/* Worst-case ratio search for `payoff` ("cut" or "2sat"). `options_json`
 * keys: resolution, refinement_rounds, refine_best, mu1, mu2, rho (each
 * [lo, hi]). When `csv_path` is non-NULL every valid grid cell is written
 * there. */
GCSP_API gcsp_status gcsp_landscape(const char* payoff, const char* options_json,
                                    const char* csv_path, char** certificate);
GCSP_API gcsp_status gcsp_sqrt_eps(const double* epsilons, int count, int resolution,
                                   char** curve);

/* Dictatorship gadgets from level >= 2 solutions of cut instances. */
GCSP_API gcsp_status gcsp_gadget_build(const gcsp_solution* solution,
                                       const gcsp_instance* instance, int r, double epsilon,
                                       gcsp_gadget** out);
GCSP_API gcsp_status gcsp_gadget_to_json(const gcsp_gadget* gadget, char** out);
GCSP_API gcsp_status gcsp_gadget_completeness(const gcsp_gadget* gadget, char** report);
/* `options_json` keys: tau, mode ("boolean" | "grid"), balance_tolerance,
 * grid_points. When `csv_path` is non-NULL one row per function goes there. */
GCSP_API gcsp_status gcsp_gadget_soundness(const gcsp_gadget* gadget, const char* options_json,
                                           const char* csv_path, char** result);
GCSP_API void gcsp_gadget_free(gcsp_gadget* gadget);

/* Exhaustive optimum; with `respect_cardinality` only balanced assignments. */
GCSP_API gcsp_status gcsp_brute_force(const gcsp_instance* instance, int respect_cardinality,
                                      char** result);

/* Runs the benchmark described by the JSON file at `config_path`; relative
 * instance paths resolve against its directory. Either output may be NULL. */
GCSP_API gcsp_status gcsp_bench(const char* config_path, char** json, char** csv);

GCSP_API gcsp_status gcsp_bvn_cdf(double t1, double t2, double rho, double* value);
/* p = 0 and p = 1 give -inf and +inf. */
GCSP_API gcsp_status gcsp_inverse_normal_cdf(double p, double* value);

#ifdef __cplusplus
}
#endif

#endif /* GCSP_GCSP_H_ */
