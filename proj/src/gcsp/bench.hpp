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

#ifndef GCSP_BENCH_HPP_
#define GCSP_BENCH_HPP_

#include <string>
#include <vector>

#include "gcsp/rounding.hpp"
#include "gcsp/serialize.hpp"

namespace gcsp {

struct BenchRow {
  std::string id;
  std::string kind;
  int n = 0;
  int terms = 0;
  double sdp_value = 0.0;
  std::string solve_status;
  int iterations = 0;
  FeasibilityReport feasibility;
  double edge_identity_error = 0.0;  // max over edges of |P(x_i != x_j) - |v_i - v_j|²/4|
  double achieved_alpha = 0.0;
  double rounded_value = 0.0;   // best trial before repair
  double repaired_value = 0.0;
  bool repair_refused = false;
  double balance_variance = 0.0;
  double optimum = 0.0;
  double ratio = 0.0;  // repaired / optimum
  double seconds = 0.0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  double seconds = 0.0;
};

// `base_dir` resolves relative instance paths. An empty instance list is an
// input error.
BenchResult RunBench(const Json& config, const std::string& base_dir);

Json ToJson(const BenchResult& result);
std::string BenchCsv(const BenchResult& result);

}  // namespace gcsp

#endif  // GCSP_BENCH_HPP_
