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

#ifndef GCSP_ROUNDING_HPP_
#define GCSP_ROUNDING_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gcsp/independence.hpp"
#include "gcsp/instance.hpp"
#include "gcsp/lasserre.hpp"
#include "gcsp/sdp_solver.hpp"

namespace gcsp {

// v_i = μ_i·I + w_i. Rows of `w` are explicit coordinates of w_i in a basis
// of the complement of I; `direction` holds w_i/‖w_i‖ (zero when degenerate).
struct BiasProfile {
  std::vector<double> bias;
  Eigen::MatrixXd w;
  Eigen::MatrixXd direction;
  std::vector<bool> degenerate;

  int n() const { return static_cast<int>(bias.size()); }
};

// Refuses (NumericalError) when the Gram of the w_i has an eigenvalue below
// -psd_tolerance.
BiasProfile BiasDecompose(const MomentSolution& solution, double psd_tolerance = 1e-6);

// Negated bias and directions: the rounding of the mirror profile labels
// every variable oppositely under the same seed.
BiasProfile Mirror(const BiasProfile& profile);

// Φ⁻¹((1+μ)/2), with ±infinity at μ = ±1.
double Threshold(double mu);

struct RepairTranscript {
  bool attempted = false;
  bool refused = false;
  std::vector<int> moved;  // in move order
  double value_before = 0.0;
  double value_after = 0.0;
  double balance_before = 0.0;
  std::string note;
};

// Labels are ±1; `balance` is E_{i~W}[y_i].
struct RoundedAssignment {
  std::vector<int> labels;
  double value = 0.0;
  double balance = 0.0;
  std::uint64_t seed = 0;
  RepairTranscript repair;

  std::vector<int> DomainValues() const;
};

// Labels only: +1 iff <g, w̄_i> <= t_i for one Gaussian g shared by all
// variables. Degenerate variables take +1 iff μ_i >= 0.
std::vector<int> RoundLabels(const BiasProfile& profile, std::uint64_t seed);
RoundedAssignment Round(const BiasProfile& profile, const CspInstance& instance,
                        std::uint64_t seed);

// Fills value and balance of an assignment from its labels.
void Score(const CspInstance& instance, RoundedAssignment& assignment);

// Moves minimum-weighted-degree vertices (lowest id on ties) off the heavy
// side while that brings the +1 weight closer to `target_plus`. When the
// weight that would have to move exceeds `delta_cap` the assignment is
// returned unchanged and flagged.
RoundedAssignment RepairBalance(const CspInstance& instance, const RoundedAssignment& assignment,
                                double target_plus, double delta_cap);

// SplitMix64 step; trial t of a run seeded with s uses SubSeed(s, t + 1).
std::uint64_t SubSeed(std::uint64_t master, std::uint64_t stream);

struct PipelineConfig {
  int level = 2;
  int trials = 32;
  double delta_cap = 1.0;
  std::uint64_t seed = 0;
  SolverConfig solver;
  DecorrelateOptions decorrelate;  // its seed is derived from `seed`
};

struct TrialStats {
  double mean = 0.0;
  double variance = 0.0;
};

struct PipelineResult {
  RoundedAssignment best;
  SolveReport solve_report;
  double sdp_value = 0.0;
  double achieved_alpha = 0.0;
  bool alpha_reached = false;
  std::vector<ConditioningStep> steps;
  TrialStats raw_balance;  // E_{i~W} y_i before repair
  TrialStats raw_value;
  TrialStats repaired_value;
  std::vector<double> trial_values;  // after repair, in trial order
};

PipelineResult Pipeline(const CspInstance& instance, const PipelineConfig& config);

// Rounding stage only, for a solution obtained elsewhere.
PipelineResult RoundSolution(const MomentSolution& solution, const CspInstance& instance,
                             const PipelineConfig& config);

}  // namespace gcsp

#endif  // GCSP_ROUNDING_HPP_
