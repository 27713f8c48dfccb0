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

#include "gcsp/independence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "gcsp/error.hpp"

namespace gcsp {
namespace {

double Xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

int CheckJoint(std::span<const double> joint, int q) {
  if (q < 1 || joint.size() != static_cast<std::size_t>(q) * q) {
    throw InputError("joint distribution has the wrong size");
  }
  return q;
}

double Uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double Loss(const CspInstance& instance, double before, double after) {
  return instance.sense() == Sense::kMaximize ? before - after : after - before;
}

}  // namespace

double Entropy(std::span<const double> distribution) {
  double h = 0.0;
  for (double p : distribution) h -= Xlog2x(p);
  return h + 0.0;  // avoid -0
}

double MutualInformation(std::span<const double> joint, int q) {
  CheckJoint(joint, q);
  std::vector<double> px(q, 0.0), py(q, 0.0);
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      px[a] += joint[a * q + b];
      py[b] += joint[a * q + b];
    }
  }
  double mi = 0.0;
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      const double p = joint[a * q + b];
      if (p > 0.0) mi += p * std::log2(p / (px[a] * py[b]));
    }
  }
  return std::max(mi, 0.0);
}

double MutualInformationByEntropy(std::span<const double> joint, int q) {
  CheckJoint(joint, q);
  std::vector<double> px(q, 0.0), py(q, 0.0);
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      px[a] += joint[a * q + b];
      py[b] += joint[a * q + b];
    }
  }
  // H(X|Y) = Σ_b P(Y=b) H(X | Y=b)
  double conditional = 0.0;
  std::vector<double> column(q);
  for (int b = 0; b < q; ++b) {
    if (!(py[b] > 0.0)) continue;
    for (int a = 0; a < q; ++a) column[a] = joint[a * q + b] / py[b];
    conditional += py[b] * Entropy(column);
  }
  return Entropy(px) - conditional;
}

PairCorrelationSummary AlphaIndependence(const MomentSolution& solution,
                                         const CspInstance& instance,
                                         const IndependenceOptions& options) {
  if (solution.level < 2) throw InputError("alpha-independence needs a level >= 2 solution");
  const int n = instance.n();
  if (solution.index_set.n() != n) throw InputError("solution and instance disagree on n");
  const auto& w = instance.vertex_weights();
  PairCorrelationSummary summary;
  if (options.per_pair) summary.pairs.assign(static_cast<std::size_t>(n) * n, 0.0);

  double total = 0.0;
  double mass = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double mi;
      if (i == j) {
        const int v[] = {i};
        mi = Entropy(LocalDistributionOf(solution, v).probabilities);
      } else {
        const int v[] = {i, j};
        mi = MutualInformation(LocalDistributionOf(solution, v).probabilities);
      }
      if (options.per_pair) {
        summary.pairs[static_cast<std::size_t>(i) * n + j] = mi;
        summary.pairs[static_cast<std::size_t>(j) * n + i] = mi;
      }
      if (i == j && !options.include_diagonal) continue;
      const double pw = (i == j ? 1.0 : 2.0) * w[i] * w[j];
      total += pw * mi;
      mass += pw;
      if (pw > 0.0) summary.max_mi = std::max(summary.max_mi, mi);
    }
  }
  summary.average_mi = mass > 0.0 ? total / mass : 0.0;
  return summary;
}

MomentSolution Condition(const MomentSolution& solution, int pivot, int value) {
  const IndexSet& src = solution.index_set;
  const int n = src.n();
  if (solution.level < 2) throw InputError("conditioning needs a level >= 2 solution");
  if (pivot < 0 || pivot >= n) throw InputError("pivot out of range");
  if (value != 0 && value != 1) throw InputError("pivot value must be 0 or 1");
  const std::uint64_t pbit = std::uint64_t{1} << pivot;
  const std::uint64_t pones = value ? pbit : 0;
  const int pindex = src.At(pbit, pones);
  const double prob = solution.gram(pindex, pindex);
  if (!(prob >= kProbabilityFloor)) throw NumericalError("cannot condition on null event");

  MomentSolution out;
  out.level = solution.level - 1;
  out.index_set = IndexSet(n, out.level);
  const int size = out.index_set.size();
  // Each index maps to (S ∪ {p}, α ∪ {v}) in the parent, or -1 if α
  // contradicts the pivot.
  std::vector<int> parent(size, -1);
  for (int a = 0; a < size; ++a) {
    const MomentIndex& idx = out.index_set[a];
    if ((idx.subset & pbit) && ((idx.ones & pbit) != pones)) continue;
    parent[a] = src.At(idx.subset | pbit, idx.ones | pones);
  }
  out.gram = Eigen::MatrixXd::Zero(size, size);
  for (int b = 0; b < size; ++b) {
    if (parent[b] < 0) continue;
    for (int a = 0; a < size; ++a) {
      if (parent[a] >= 0) out.gram(a, b) = solution.gram(parent[a], parent[b]) / prob;
    }
  }
  return out;
}

MomentSolution Condition(const MomentSolution& solution, int pivot, int value,
                         const CspInstance& instance) {
  MomentSolution out = Condition(solution, pivot, value);
  out.objective_value = ObjectiveOf(out, instance);
  return out;
}

DecorrelateResult Decorrelate(const MomentSolution& solution, const CspInstance& instance,
                              const DecorrelateOptions& options) {
  if (options.depth < 0) throw InputError("conditioning depth must be >= 0");
  if (!(options.alpha >= 0.0)) throw InputError("alpha must be >= 0");
  const int budget = std::max(0, std::min(options.depth, solution.level - 2));
  const double objective0 = ObjectiveOf(solution, instance);
  auto alpha_of = [&](const MomentSolution& s) {
    return AlphaIndependence(s, instance, options.independence).average_mi;
  };

  DecorrelateResult best;
  best.solution = solution;
  best.solution.objective_value = objective0;
  best.achieved_alpha = alpha_of(solution);
  best.reached = best.achieved_alpha <= options.alpha;
  if (best.reached || budget == 0) return best;

  if (options.strategy == DecorrelateStrategy::kSampled) {
    std::mt19937_64 rng(options.seed);
    const auto& w = instance.vertex_weights();
    MomentSolution current = solution;
    std::vector<ConditioningStep> steps;
    for (int t = 0; t < budget; ++t) {
      double u = Uniform01(rng);
      int pivot = instance.n() - 1;
      for (int i = 0; i < instance.n(); ++i) {
        if (u < w[i]) {
          pivot = i;
          break;
        }
        u -= w[i];
      }
      const int v[] = {pivot};
      const LocalDistribution marginal = LocalDistributionOf(current, v);
      int value = Uniform01(rng) < marginal.probabilities[0] ? 0 : 1;
      if (marginal.probabilities[value] < kProbabilityFloor) value = 1 - value;
      steps.push_back({pivot, value, marginal.probabilities[value]});
      current = Condition(current, pivot, value, instance);
      const double alpha = alpha_of(current);
      if (alpha < best.achieved_alpha) {
        best.solution = current;
        best.steps = steps;
        best.achieved_alpha = alpha;
      }
      if (alpha <= options.alpha) {
        best.solution = current;
        best.steps = steps;
        best.achieved_alpha = alpha;
        best.reached = true;
        break;
      }
    }
    return best;
  }

  // Iterative deepening; within a depth, sequences run in lexicographic
  // (pivot, value) order and the first success wins.
  std::vector<ConditioningStep> path;
  std::vector<bool> used(instance.n(), false);
  std::function<bool(const MomentSolution&, int)> search = [&](const MomentSolution& current,
                                                               int remaining) -> bool {
    if (remaining == 0) {
      const double alpha = alpha_of(current);
      const bool ok =
          alpha <= options.alpha && Loss(instance, objective0, current.objective_value) <= options.alpha;
      if (ok || alpha < best.achieved_alpha) {
        best.solution = current;
        best.steps = path;
        best.achieved_alpha = alpha;
        best.reached = ok;
      }
      return ok;
    }
    for (int pivot = 0; pivot < instance.n(); ++pivot) {
      if (used[pivot]) continue;
      const int v[] = {pivot};
      const LocalDistribution marginal = LocalDistributionOf(current, v);
      for (int value = 0; value < 2; ++value) {
        if (marginal.probabilities[value] < kProbabilityFloor) continue;
        used[pivot] = true;
        path.push_back({pivot, value, marginal.probabilities[value]});
        const bool found = search(Condition(current, pivot, value, instance), remaining - 1);
        path.pop_back();
        used[pivot] = false;
        if (found) return true;
      }
    }
    return false;
  };
  for (int d = 1; d <= budget; ++d) {
    if (search(solution, d)) break;
  }
  return best;
}

}  // namespace gcsp
