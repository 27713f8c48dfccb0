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

#ifndef GCSP_INDEPENDENCE_HPP_
#define GCSP_INDEPENDENCE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "gcsp/instance.hpp"
#include "gcsp/lasserre.hpp"

namespace gcsp {

// All information quantities are in bits.
double Entropy(std::span<const double> distribution);

// Joint over [q]x[q], row-major (first variable is the row). Terms with zero
// joint mass contribute nothing.
double MutualInformation(std::span<const double> joint, int q = 2);
// H(X) - H(X|Y) on the same joint; an independent route to the same number.
double MutualInformationByEntropy(std::span<const double> joint, int q = 2);

struct PairCorrelationSummary {
  double average_mi = 0.0;
  double max_mi = 0.0;
  std::vector<double> pairs;  // n*n, filled on request
};

struct IndependenceOptions {
  // Count i = j draws (contributing H(X_i)). When false the average runs over
  // i != j, renormalized by 1 - Σ W_i².
  bool include_diagonal = true;
  bool per_pair = false;
};

PairCorrelationSummary AlphaIndependence(const MomentSolution& solution,
                                         const CspInstance& instance,
                                         const IndependenceOptions& options = {});

struct ConditioningStep {
  int pivot = 0;
  int value = 0;  // domain value
  double probability = 0.0;
};

inline constexpr double kProbabilityFloor = 1e-9;

// Level k -> k-1 conditioning on x_pivot = value. The index set keeps every
// (S, α) with |S| <= k-1; indices that disagree with the pivot become zero
// vectors. The objective is recomputed when an instance is supplied.
MomentSolution Condition(const MomentSolution& solution, int pivot, int value);
MomentSolution Condition(const MomentSolution& solution, int pivot, int value,
                         const CspInstance& instance);

enum class DecorrelateStrategy { kSampled, kExhaustive };

struct DecorrelateOptions {
  double alpha = 0.05;
  DecorrelateStrategy strategy = DecorrelateStrategy::kSampled;
  int depth = 4;  // further capped so the result keeps level >= 2
  std::uint64_t seed = 0;
  IndependenceOptions independence;
};

struct DecorrelateResult {
  MomentSolution solution;
  std::vector<ConditioningStep> steps;
  double achieved_alpha = 0.0;
  bool reached = false;
};

DecorrelateResult Decorrelate(const MomentSolution& solution, const CspInstance& instance,
                              const DecorrelateOptions& options);

}  // namespace gcsp

#endif  // GCSP_INDEPENDENCE_HPP_
