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

#ifndef GCSP_ORACLE_HPP_
#define GCSP_ORACLE_HPP_

#include <cstdint>
#include <vector>

#include "gcsp/instance.hpp"
#include "gcsp/lasserre.hpp"

namespace gcsp {

inline constexpr int kMaxBruteForceConstrained = 24;
inline constexpr int kMaxBruteForceFree = 20;

struct ExactResult {
  double optimum = 0.0;
  std::vector<int> witness;  // domain values; lexicographically first optimum
  std::uint64_t optima = 0;
  std::uint64_t enumerated = 0;
  std::uint64_t feasible = 0;
};

// Gray-code enumeration. With the cardinality filter only assignments whose
// weighted value-0 fraction equals c_0 (within 1e-9) count.
ExactResult BruteForce(const CspInstance& instance, bool respect_cardinality);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double sigma = 0.0;
};

MonteCarloEstimate McBvn(double t1, double t2, double rho, std::uint64_t samples,
                         std::uint64_t seed);

// Moments of a finite mixture of assignments (domain values) at `level`.
MomentSolution ExactMixtureMoments(const CspInstance& instance, int level,
                                   const std::vector<std::vector<int>>& assignments,
                                   const std::vector<double>& probabilities);

}  // namespace gcsp

#endif  // GCSP_ORACLE_HPP_
