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

#include "gcsp/oracle.hpp"

#include <bit>
#include <cmath>
#include <random>

#include "gcsp/error.hpp"

namespace gcsp {

ExactResult BruteForce(const CspInstance& instance, bool respect_cardinality) {
  const int n = instance.n();
  const int cap = respect_cardinality ? kMaxBruteForceConstrained : kMaxBruteForceFree;
  if (n > cap) {
    throw CapacityError("brute force supports n <= " + std::to_string(cap) + ", got " +
                        std::to_string(n));
  }
  if (instance.q() != 2) throw InputError("brute force supports q = 2 only");
  const auto& payoffs = instance.payoffs();
  const auto& w = instance.vertex_weights();
  const double target = instance.cardinality().proportions.at(0);
  std::vector<std::vector<int>> touching(n);
  for (std::size_t t = 0; t < payoffs.size(); ++t) {
    for (int v : payoffs[t].scope) touching[v].push_back(static_cast<int>(t));
  }

  std::vector<int> x(n, 0);
  std::vector<int> local;
  auto term_value = [&](int t) {
    const PayoffTerm& term = payoffs[t];
    local.resize(term.scope.size());
    for (std::size_t k = 0; k < term.scope.size(); ++k) local[k] = x[term.scope[k]];
    return term.weight * term.Value(local);
  };
  double value = 0.0;
  for (std::size_t t = 0; t < payoffs.size(); ++t) value += term_value(static_cast<int>(t));
  double zero_weight = 1.0;  // weight of variables at value 0

  const bool maximize = instance.sense() == Sense::kMaximize;
  ExactResult result;
  std::uint64_t best_key = 0;
  bool have = false;
  auto key_of = [&]() {
    std::uint64_t key = 0;
    for (int i = 0; i < n; ++i) key = (key << 1) | static_cast<std::uint64_t>(x[i]);
    return key;
  };
  auto visit = [&]() {
    ++result.enumerated;
    if (respect_cardinality && std::abs(zero_weight - target) > 1e-9) return;
    ++result.feasible;
    const bool better = !have || (maximize ? value > result.optimum + 1e-12
                                           : value < result.optimum - 1e-12);
    if (better) {
      have = true;
      result.optimum = value;
      result.optima = 1;
      best_key = key_of();
    } else if (std::abs(value - result.optimum) <= 1e-12) {
      ++result.optima;
      best_key = std::min(best_key, key_of());
    }
  };

  visit();
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const int v = std::countr_zero(step);  // Gray code flips bit v
    for (int t : touching[v]) value -= term_value(t);
    x[v] ^= 1;
    zero_weight += x[v] ? -w[v] : w[v];
    for (int t : touching[v]) value += term_value(t);
    visit();
  }
  if (!have) throw InputError("no assignment meets the cardinality constraint");
  result.witness.resize(n);
  for (int i = 0; i < n; ++i) result.witness[i] = static_cast<int>((best_key >> (n - 1 - i)) & 1U);
  result.optimum = instance.Evaluate(result.witness);
  return result;
}

MonteCarloEstimate McBvn(double t1, double t2, double rho, std::uint64_t samples,
                         std::uint64_t seed) {
  if (samples < 10000) throw InputError("Monte Carlo needs at least 1e4 samples");
  if (!(rho >= -1.0 && rho <= 1.0)) throw InputError("correlation outside [-1, 1]");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const double s = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  std::uint64_t hits = 0;
  for (std::uint64_t k = 0; k < samples; ++k) {
    const double a = normal(rng);
    const double b = normal(rng);
    if (a <= t1 && rho * a + s * b <= t2) ++hits;
  }
  MonteCarloEstimate out;
  out.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  out.sigma = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
  return out;
}

MomentSolution ExactMixtureMoments(const CspInstance& instance, int level,
                                   const std::vector<std::vector<int>>& assignments,
                                   const std::vector<double>& probabilities) {
  const int n = instance.n();
  if (level < 1) throw InputError("level must be >= 1");
  if (assignments.empty() || assignments.size() != probabilities.size()) {
    throw InputError("need one probability per assignment");
  }
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0)) throw InputError("mixture probabilities must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InputError("mixture probabilities must sum to 1");
  if (IndexSet::CountFor(n, level) > kIndexCap) {
    throw CapacityError("level too high for n: index set has " +
                        std::to_string(IndexSet::CountFor(n, level)) + " rows, cap is " +
                        std::to_string(kIndexCap));
  }
  MomentSolution out;
  out.level = level;
  out.index_set = IndexSet(n, level);
  const int size = out.index_set.size();
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(size, static_cast<Eigen::Index>(assignments.size()));
  for (std::size_t r = 0; r < assignments.size(); ++r) {
    const auto& x = assignments[r];
    if (static_cast<int>(x.size()) != n) throw InputError("assignment length does not match n");
    std::uint64_t ones = 0;
    for (int i = 0; i < n; ++i) {
      if (x[i] != 0 && x[i] != 1) throw InputError("assignment values must be 0 or 1");
      if (x[i]) ones |= std::uint64_t{1} << i;
    }
    const double s = std::sqrt(probabilities[r]);
    for (int a = 0; a < size; ++a) {
      const MomentIndex& idx = out.index_set[a];
      if ((ones & idx.subset) == idx.ones) u(a, static_cast<Eigen::Index>(r)) = s;
    }
  }
  out.gram = u * u.transpose();
  out.objective_value = ObjectiveOf(out, instance);
  return out;
}

}  // namespace gcsp
