/*
 * Copyright 2026 The gcsp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Exercises the shared library through its C header only. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "gcsp/gcsp.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s (last error: %s)\n", __FILE__, \
              __LINE__, #cond, gcsp_last_error());                     \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static void Instances(void) {
  gcsp_instance* c4 = NULL;
  int n = 0, terms = 0;
  double value = 0.0;
  const int alternating[4] = {0, 1, 0, 1};
  char* json = NULL;
  gcsp_instance* back = NULL;

  EXPECT(gcsp_instance_parse_edges("0 1\n1 2\n2 3\n3 0\n", &c4) == GCSP_OK);
  EXPECT(gcsp_instance_size(c4, &n, &terms) == GCSP_OK);
  EXPECT(n == 4 && terms == 4);
  EXPECT(gcsp_instance_evaluate(c4, alternating, 4, &value) == GCSP_OK);
  EXPECT(fabs(value - 1.0) < 1e-15);
  EXPECT(gcsp_instance_evaluate(c4, alternating, 3, &value) == GCSP_ERR_INPUT);

  EXPECT(gcsp_instance_to_json(c4, &json) == GCSP_OK);
  EXPECT(gcsp_instance_from_json(json, &back) == GCSP_OK);
  EXPECT(gcsp_instance_evaluate(back, alternating, 4, &value) == GCSP_OK);
  EXPECT(fabs(value - 1.0) < 1e-15);
  gcsp_string_free(json);
  gcsp_instance_free(back);
  gcsp_instance_free(c4);

  EXPECT(gcsp_instance_parse_edges("0 x\n", &c4) == GCSP_ERR_INPUT);
  EXPECT(strlen(gcsp_last_error()) > 0);
  EXPECT(gcsp_instance_load("/nonexistent/file.txt", &c4) == GCSP_ERR_INPUT);
  EXPECT(gcsp_instance_from_json("{not json", &c4) == GCSP_ERR_INPUT);
  EXPECT(gcsp_instance_size(NULL, &n, &terms) == GCSP_ERR_INPUT);
  gcsp_instance_free(NULL);
}

static void SolveRoundGadget(void) {
  gcsp_instance* c4 = NULL;
  gcsp_solution* s = NULL;
  gcsp_solution* back = NULL;
  gcsp_gadget* g = NULL;
  char* report = NULL;
  char* text = NULL;
  char* round_a = NULL;
  char* round_b = NULL;
  double objective = 0.0;
  int level = 0;

  EXPECT(gcsp_instance_parse_edges("0 1\n1 2\n2 3\n3 0\n", &c4) == GCSP_OK);
  EXPECT(gcsp_solve(c4, 2, "{\"primal_tolerance\": 1e-10, \"dual_tolerance\": 1e-10}", &s,
                    &report) == GCSP_OK);
  EXPECT(report != NULL && strstr(report, "\"status\"") != NULL);
  gcsp_string_free(report);
  EXPECT(gcsp_solution_level(s, &level) == GCSP_OK && level == 2);
  EXPECT(gcsp_solution_objective(s, c4, &objective) == GCSP_OK);
  EXPECT(fabs(objective - 1.0) < 1e-6);

  EXPECT(gcsp_solution_to_json(s, &text) == GCSP_OK);
  EXPECT(gcsp_solution_from_json(text, &back) == GCSP_OK);
  gcsp_string_free(text);
  EXPECT(gcsp_solution_check(back, c4, &text) == GCSP_OK);
  EXPECT(strstr(text, "min_eigenvalue") != NULL);
  gcsp_string_free(text);
  EXPECT(gcsp_solution_independence(back, c4, &text) == GCSP_OK);
  gcsp_string_free(text);
  gcsp_solution_free(back);

  EXPECT(gcsp_round(s, c4, "{\"trials\": 4, \"seed\": 17}", &round_a) == GCSP_OK);
  EXPECT(gcsp_round(s, c4, "{\"trials\": 4, \"seed\": 17}", &round_b) == GCSP_OK);
  EXPECT(round_a && round_b && strcmp(round_a, round_b) == 0);
  gcsp_string_free(round_a);
  gcsp_string_free(round_b);
  EXPECT(gcsp_round(s, c4, "{\"strategy\": \"greedy\"}", &round_a) == GCSP_ERR_INPUT);

  EXPECT(gcsp_gadget_build(s, c4, 2, 0.1, &g) == GCSP_OK);
  EXPECT(gcsp_gadget_completeness(g, &text) == GCSP_OK);
  EXPECT(strstr(text, "\"passed\": true") != NULL);
  gcsp_string_free(text);
  EXPECT(gcsp_gadget_soundness(g, "{\"tau\": 1.0}", NULL, &text) == GCSP_OK);
  EXPECT(strstr(text, "\"evaluated\": 16") != NULL);
  gcsp_string_free(text);
  gcsp_gadget_free(g);
  EXPECT(gcsp_gadget_build(s, c4, 13, 0.1, &g) == GCSP_ERR_CAPACITY);

  EXPECT(gcsp_brute_force(c4, 1, &text) == GCSP_OK);
  EXPECT(strstr(text, "\"optimum\"") != NULL);
  gcsp_string_free(text);

  gcsp_solution_free(s);
  gcsp_instance_free(c4);
}

static void Capacity(void) {
  gcsp_instance* g = NULL;
  gcsp_solution* s = NULL;
  EXPECT(gcsp_instance_generate("{\"family\": \"cycle\", \"n\": 20}", &g) == GCSP_OK);
  EXPECT(gcsp_solve(g, 9, NULL, &s, NULL) == GCSP_ERR_CAPACITY);
  EXPECT(s == NULL);
  gcsp_instance_free(g);
}

static void Numerics(void) {
  double v = 0.0;
  char* cert = NULL;
  EXPECT(gcsp_bvn_cdf(0.0, 0.0, 0.5, &v) == GCSP_OK);
  EXPECT(fabs(v - 1.0 / 3.0) < 1e-12);
  EXPECT(gcsp_bvn_cdf(0.0, 0.0, 1.5, &v) == GCSP_ERR_INPUT);
  EXPECT(gcsp_inverse_normal_cdf(0.5, &v) == GCSP_OK);
  EXPECT(fabs(v) < 1e-15);
  EXPECT(gcsp_inverse_normal_cdf(0.0, &v) == GCSP_OK && isinf(v) && v < 0);
  EXPECT(gcsp_inverse_normal_cdf(1.5, &v) == GCSP_ERR_INPUT);
  EXPECT(gcsp_landscape("cut", "{\"resolution\": 50, \"refinement_rounds\": 0}", NULL, &cert) ==
         GCSP_OK);
  EXPECT(cert != NULL && strstr(cert, "\"minimum\"") != NULL);
  gcsp_string_free(cert);
  EXPECT(gcsp_landscape("3sat", NULL, NULL, &cert) == GCSP_ERR_INPUT);
}

int main(void) {
  EXPECT(strlen(gcsp_version()) > 0);
  Instances();
  SolveRoundGadget();
  Capacity();
  Numerics();
  if (failures) {
    fprintf(stderr, "%d C API check(s) failed\n", failures);
    return 1;
  }
  printf("C API checks passed (version %s)\n", gcsp_version());
  return 0;
}
