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

#include "gcsp/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gcsp/error.hpp"
#include "gcsp/gaussian.hpp"

namespace gcsp {
namespace {

constexpr double kDegenerate = 1e-12;

TrialStats Moments(const std::vector<double>& xs) {
  TrialStats s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  for (double x : xs) s.variance += (x - s.mean) * (x - s.mean);
  s.variance /= static_cast<double>(xs.size());
  return s;
}

bool Better(const CspInstance& instance, const RoundedAssignment& a, const RoundedAssignment& b) {
  if (a.repair.refused != b.repair.refused) return !a.repair.refused;
  return instance.sense() == Sense::kMaximize ? a.value > b.value : a.value < b.value;
}

}  // namespace

std::vector<int> RoundedAssignment::DomainValues() const {
  std::vector<int> values(labels.size());
  std::transform(labels.begin(), labels.end(), values.begin(), LabelToValue);
  return values;
}

BiasProfile BiasDecompose(const MomentSolution& solution, double psd_tolerance) {
  if (solution.level < 1) throw InputError("bias decomposition needs a level >= 1 solution");
  const int n = solution.index_set.n();
  BiasProfile profile;
  profile.bias.resize(n);
  for (int i = 0; i < n; ++i) profile.bias[i] = Bias(solution, i);
  Eigen::MatrixXd c(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      c(i, j) = c(j, i) = SignedInnerProduct(solution, i, j) - profile.bias[i] * profile.bias[j];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
  if (eig.info() != Eigen::Success) throw NumericalError("bias decomposition: eigensolver failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  if (n > 0 && lambda(0) < -psd_tolerance) {
    throw NumericalError("bias decomposition: gram is not PSD (eigenvalue " +
                         std::to_string(lambda(0)) + ")");
  }
  const double keep = kDegenerate * std::max(1.0, n > 0 ? lambda(n - 1) : 0.0);
  int first = 0;
  while (first < n && lambda(first) <= keep) ++first;
  const int rank = n - first;
  profile.w = eig.eigenvectors().rightCols(rank) *
              lambda.tail(rank).cwiseSqrt().asDiagonal();
  profile.direction = Eigen::MatrixXd::Zero(n, rank);
  profile.degenerate.assign(n, false);
  for (int i = 0; i < n; ++i) {
    const double norm2 = profile.w.row(i).squaredNorm();
    const double mu = profile.bias[i];
    if (1.0 - mu * mu < kDegenerate || norm2 < kDegenerate) {
      profile.degenerate[i] = true;
    } else {
      profile.direction.row(i) = profile.w.row(i) / std::sqrt(norm2);
    }
  }
  return profile;
}

BiasProfile Mirror(const BiasProfile& profile) {
  BiasProfile out = profile;
  for (double& mu : out.bias) mu = -mu;
  out.w = -profile.w;
  out.direction = -profile.direction;
  return out;
}

double Threshold(double mu) {
  if (mu >= 1.0) return std::numeric_limits<double>::infinity();
  if (mu <= -1.0) return -std::numeric_limits<double>::infinity();
  return InverseNormalCdf(0.5 * mu + 0.5);
}

std::vector<int> RoundLabels(const BiasProfile& profile, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd g(profile.direction.cols());
  for (Eigen::Index k = 0; k < g.size(); ++k) g(k) = normal(rng);
  const Eigen::VectorXd xi = profile.direction * g;
  std::vector<int> labels(profile.n());
  for (int i = 0; i < profile.n(); ++i) {
    if (profile.degenerate[i]) {
      labels[i] = profile.bias[i] >= 0.0 ? 1 : -1;
    } else {
      labels[i] = xi(i) <= Threshold(profile.bias[i]) ? 1 : -1;
    }
  }
  return labels;
}

void Score(const CspInstance& instance, RoundedAssignment& assignment) {
  if (static_cast<int>(assignment.labels.size()) != instance.n()) {
    throw InputError("assignment length does not match the instance");
  }
  assignment.value = instance.Evaluate(assignment.DomainValues());
  double balance = 0.0;
  for (int i = 0; i < instance.n(); ++i) balance += instance.vertex_weights()[i] * assignment.labels[i];
  assignment.balance = balance;
}

RoundedAssignment Round(const BiasProfile& profile, const CspInstance& instance,
                        std::uint64_t seed) {
  if (profile.n() != instance.n()) throw InputError("profile and instance disagree on n");
  RoundedAssignment out;
  out.labels = RoundLabels(profile, seed);
  out.seed = seed;
  Score(instance, out);
  return out;
}

RoundedAssignment RepairBalance(const CspInstance& instance, const RoundedAssignment& assignment,
                                double target_plus, double delta_cap) {
  const int n = instance.n();
  if (static_cast<int>(assignment.labels.size()) != n) {
    throw InputError("assignment length does not match the instance");
  }
  if (!(target_plus >= 0.0 && target_plus <= 1.0)) throw InputError("target balance out of [0,1]");
  const auto& w = instance.vertex_weights();
  RoundedAssignment out = assignment;
  Score(instance, out);
  out.repair = RepairTranscript{};
  out.repair.attempted = true;
  out.repair.value_before = out.value;
  out.repair.balance_before = out.balance;

  double plus = 0.0;
  for (int i = 0; i < n; ++i) {
    if (out.labels[i] > 0) plus += w[i];
  }
  if (std::abs(plus - target_plus) > delta_cap + 1e-12) {
    out.repair.refused = true;
    out.repair.note = "imbalance " + std::to_string(std::abs(plus - target_plus)) +
                      " exceeds delta cap " + std::to_string(delta_cap);
    out.repair.value_after = out.value;
    return out;
  }
  const std::vector<double> degree = instance.WeightedDegrees();
  for (;;) {
    const double diff = plus - target_plus;
    const int heavy = diff > 0.0 ? 1 : -1;
    int pick = -1;
    for (int i = 0; i < n; ++i) {
      if (out.labels[i] == heavy && (pick < 0 || degree[i] < degree[pick])) pick = i;
    }
    if (pick < 0) break;
    const double after = diff - heavy * w[pick];
    if (!(std::abs(after) < std::abs(diff) - 1e-12)) break;
    out.labels[pick] = -heavy;
    plus -= heavy * w[pick];
    out.repair.moved.push_back(pick);
  }
  Score(instance, out);
  out.repair.value_after = out.value;
  return out;
}

std::uint64_t SubSeed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + stream * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

PipelineResult RoundSolution(const MomentSolution& solution, const CspInstance& instance,
                             const PipelineConfig& config) {
  if (config.trials < 1) throw InputError("trials must be >= 1");
  if (instance.cardinality().proportions.empty()) throw InputError("instance has no cardinality");
  PipelineResult result;
  result.sdp_value = ObjectiveOf(solution, instance);

  DecorrelateOptions dopts = config.decorrelate;
  dopts.seed = SubSeed(config.seed, 0);
  DecorrelateResult dec = Decorrelate(solution, instance, dopts);
  result.achieved_alpha = dec.achieved_alpha;
  result.alpha_reached = dec.reached;
  result.steps = dec.steps;

  const BiasProfile profile = BiasDecompose(dec.solution);
  const double target = instance.cardinality().proportions[0];
  std::vector<double> balances, raw_values;
  for (int t = 0; t < config.trials; ++t) {
    const RoundedAssignment raw = Round(profile, instance, SubSeed(config.seed, t + 1));
    balances.push_back(raw.balance);
    raw_values.push_back(raw.value);
    RoundedAssignment fixed = RepairBalance(instance, raw, target, config.delta_cap);
    result.trial_values.push_back(fixed.value);
    if (t == 0 || Better(instance, fixed, result.best)) result.best = std::move(fixed);
  }
  result.raw_balance = Moments(balances);
  result.raw_value = Moments(raw_values);
  result.repaired_value = Moments(result.trial_values);
  return result;
}

PipelineResult Pipeline(const CspInstance& instance, const PipelineConfig& config) {
  const Relaxation relaxation = BuildRelaxation(instance, config.level, false);
  auto [solution, report] = Solve(relaxation, instance, config.solver);
  PipelineResult result = RoundSolution(solution, instance, config);
  result.solve_report = std::move(report);
  return result;
}

}  // namespace gcsp
