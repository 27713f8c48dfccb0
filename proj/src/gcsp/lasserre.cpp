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

#include "gcsp/lasserre.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "gcsp/error.hpp"

namespace gcsp {
namespace {

int Popcount(std::uint64_t x) { return std::popcount(x); }

// Subsets of {0..n-1} of size s in lexicographic order of their sorted lists.
void ForEachCombination(int n, int s, const auto& visit) {
  std::vector<int> c(s);
  for (int i = 0; i < s; ++i) c[i] = i;
  while (true) {
    std::uint64_t mask = 0;
    for (int v : c) mask |= std::uint64_t{1} << v;
    visit(mask);
    int i = s - 1;
    while (i >= 0 && c[i] == n - s + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < s; ++j) c[j] = c[j - 1] + 1;
  }
}

std::vector<int> Bits(std::uint64_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

// Sub-masks of `mask` that contain `base`.
void ForEachSuperset(std::uint64_t base, std::uint64_t mask, const auto& visit) {
  const std::uint64_t free = mask & ~base;
  std::uint64_t sub = free;
  while (true) {
    visit(base | sub);
    if (sub == 0) break;
    sub = (sub - 1) & free;
  }
}

void CheckSizes(const CspInstance& instance, int level) {
  if (level < 2) throw InputError("relaxation level must be at least 2");
  if (instance.q() != 2) throw InputError("relaxation supports q = 2 only");
  if (instance.n() > 64) throw CapacityError("relaxation supports at most 64 variables");
  const std::size_t size = IndexSet::CountFor(instance.n(), level);
  if (size > kIndexCap) {
    throw CapacityError("level too high for n: index set has " +
                        (size == std::numeric_limits<std::size_t>::max()
                             ? std::string("more than 2^64")
                             : std::to_string(size)) +
                        " rows, cap is " + std::to_string(kIndexCap));
  }
  if (level >= 3 && instance.n() > kMaxLevelAboveTwoVariables) {
    throw CapacityError("level " + std::to_string(level) + " is limited to n <= " +
                        std::to_string(kMaxLevelAboveTwoVariables) + " (n = " +
                        std::to_string(instance.n()) + ")");
  }
  for (const auto& term : instance.payoffs()) {
    if (static_cast<int>(term.scope.size()) > level) {
      throw InputError("payoff scope larger than the relaxation level");
    }
  }
}

void Push(ConicProgram& program, std::map<std::pair<int, int>, double> terms, double rhs) {
  AffineConstraint c;
  c.rhs = rhs;
  for (const auto& [rc, coef] : terms) {
    if (coef != 0.0) c.terms.push_back({rc.first, rc.second, coef});
  }
  if (!c.terms.empty()) program.constraints.push_back(std::move(c));
}

std::pair<int, int> Upper(int a, int b) { return a <= b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

int MomentIndex::size() const { return Popcount(subset); }

std::vector<int> MomentIndex::variables() const { return Bits(subset); }

std::vector<int> MomentIndex::values() const {
  std::vector<int> out;
  for (int v : Bits(subset)) out.push_back((ones >> v) & 1U ? 1 : 0);
  return out;
}

std::uint64_t MaskOf(std::span<const int> variables) {
  std::uint64_t mask = 0;
  for (int v : variables) {
    if (v < 0 || v >= 64) throw InputError("variable id outside [0,64)");
    mask |= std::uint64_t{1} << v;
  }
  return mask;
}

std::size_t IndexSet::CountFor(int n, int level) {
  constexpr double kMax = 1.8e19;
  double total = 0.0;
  double binom = 1.0;
  for (int s = 0; s <= std::min(level, n); ++s) {
    if (s > 0) binom = binom * (n - s + 1) / s;
    total += binom * std::ldexp(1.0, s);
    if (total > kMax) return std::numeric_limits<std::size_t>::max();
  }
  return static_cast<std::size_t>(std::llround(total));
}

IndexSet::IndexSet(int n, int level) : n_(n), level_(level) {
  if (n < 0 || n > 64) throw InputError("index set supports 0..64 variables");
  if (level < 0) throw InputError("negative level");
  for (int s = 0; s <= std::min(level, n); ++s) {
    ForEachCombination(n, s, [&](std::uint64_t mask) {
      const std::vector<int> vars = Bits(mask);
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << s); ++a) {
        std::uint64_t ones = 0;
        for (int t = 0; t < s; ++t) {
          if ((a >> (s - 1 - t)) & 1U) ones |= std::uint64_t{1} << vars[t];
        }
        lookup_.emplace(std::pair{mask, ones}, static_cast<int>(entries_.size()));
        entries_.push_back({mask, ones});
      }
    });
  }
}

std::optional<int> IndexSet::Find(std::uint64_t subset, std::uint64_t ones) const {
  auto it = lookup_.find({subset, ones});
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

int IndexSet::At(std::uint64_t subset, std::uint64_t ones) const {
  auto found = Find(subset, ones);
  if (!found) throw InputError("moment index not in the index set");
  return *found;
}

Relaxation BuildRelaxation(const CspInstance& instance, int level, bool literal) {
  CheckSizes(instance, level);
  const int n = instance.n();
  const auto& w = instance.vertex_weights();
  const auto& card = instance.cardinality().proportions;

  Relaxation relax;
  relax.level = level;
  relax.index_set = IndexSet(n, level);

  // Reduced form over monomials.
  std::unordered_map<std::uint64_t, int> mono_pos;
  for (int s = 0; s <= std::min(level, n); ++s) {
    ForEachCombination(n, s, [&](std::uint64_t mask) {
      mono_pos.emplace(mask, static_cast<int>(relax.monomials.size()));
      relax.monomials.push_back(mask);
    });
  }
  const int m = static_cast<int>(relax.monomials.size());
  ConicProgram& red = relax.reduced;
  red.dim = m;
  red.sense = instance.sense();
  auto y = [&](std::uint64_t mask) { return mono_pos.at(mask); };  // entry (0, y)

  Push(red, {{{0, 0}, 1.0}}, 1.0);
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      const std::uint64_t u = relax.monomials[a] | relax.monomials[b];
      if (Popcount(u) > level) continue;
      const int c = y(u);
      if (a == 0 && b == c) continue;
      Push(red, {{{a, b}, 1.0}, {{0, c}, -1.0}}, 0.0);
    }
  }
  // Σ_j W_j E[x_j x_S] = c_1 E[x_S] for |S| <= k-1.
  for (int a = 0; a < m; ++a) {
    const std::uint64_t s_mask = relax.monomials[a];
    if (Popcount(s_mask) > level - 1) continue;
    std::map<std::pair<int, int>, double> terms;
    for (int j = 0; j < n; ++j) {
      if (w[j] == 0.0) continue;
      terms[{0, y(s_mask | (std::uint64_t{1} << j))}] += w[j];
    }
    terms[{0, y(s_mask)}] -= card[1];
    Push(red, std::move(terms), 0.0);
  }
  {
    std::map<std::pair<int, int>, double> obj;
    for (const auto& term : instance.payoffs()) {
      const std::uint64_t s_mask = MaskOf(term.scope);
      const int t = static_cast<int>(term.scope.size());
      for (std::size_t beta = 0; beta < term.table.size(); ++beta) {
        const double payoff = term.table[beta];
        if (payoff == 0.0) continue;
        std::uint64_t ones = 0;
        for (int r = 0; r < t; ++r) {
          if ((beta >> (t - 1 - r)) & 1U) ones |= std::uint64_t{1} << term.scope[r];
        }
        ForEachSuperset(ones, s_mask, [&](std::uint64_t tm) {
          const double sign = ((Popcount(tm) - Popcount(ones)) % 2 == 0) ? 1.0 : -1.0;
          obj[{0, y(tm)}] += term.weight * payoff * sign;
        });
      }
    }
    for (const auto& [rc, coef] : obj) {
      if (coef != 0.0) red.objective.push_back({rc.first, rc.second, coef});
    }
  }

  if (!literal) return relax;

  // Literal form over the (S, α) index set.
  const IndexSet& idx = relax.index_set;
  const int dim = idx.size();
  ConicProgram& lit = relax.program;
  lit.dim = dim;
  lit.sense = instance.sense();
  Push(lit, {{{0, 0}, 1.0}}, 1.0);
  for (int p = 0; p < dim; ++p) {
    for (int q = p; q < dim; ++q) {
      const MomentIndex& a = idx[p];
      const MomentIndex& b = idx[q];
      const std::uint64_t u = a.subset | b.subset;
      if (Popcount(u) > level) continue;
      if ((a.ones ^ b.ones) & a.subset & b.subset) {
        Push(lit, {{{p, q}, 1.0}}, 0.0);
        continue;
      }
      const int c = idx.At(u, a.ones | b.ones);
      if (p == 0 && q == c) continue;
      Push(lit, {{{p, q}, 1.0}, {Upper(0, c), -1.0}}, 0.0);
    }
  }
  for (int p = 0; p < dim; ++p) {
    const MomentIndex& a = idx[p];
    if (a.size() > level - 1) continue;
    for (int j = 0; j < n; ++j) {
      const std::uint64_t bit = std::uint64_t{1} << j;
      if (a.subset & bit) continue;
      Push(lit,
           {{{0, idx.At(a.subset | bit, a.ones)}, 1.0},
            {{0, idx.At(a.subset | bit, a.ones | bit)}, 1.0},
            {Upper(0, p), -1.0}},
           0.0);
    }
    for (int value = 0; value < 2; ++value) {
      std::map<std::pair<int, int>, double> terms;
      for (int j = 0; j < n; ++j) {
        if (w[j] == 0.0) continue;
        const std::uint64_t bit = std::uint64_t{1} << j;
        if (a.subset & bit) {
          const int aj = (a.ones & bit) ? 1 : 0;
          if (aj == value) terms[Upper(0, p)] += w[j];
        } else {
          terms[{0, idx.At(a.subset | bit, value ? (a.ones | bit) : a.ones)}] += w[j];
        }
      }
      terms[Upper(0, p)] -= card[value];
      Push(lit, std::move(terms), 0.0);
    }
  }
  {
    std::map<std::pair<int, int>, double> obj;
    for (const auto& term : instance.payoffs()) {
      const std::uint64_t s_mask = MaskOf(term.scope);
      const int t = static_cast<int>(term.scope.size());
      for (std::size_t beta = 0; beta < term.table.size(); ++beta) {
        if (term.table[beta] == 0.0) continue;
        std::uint64_t ones = 0;
        for (int r = 0; r < t; ++r) {
          if ((beta >> (t - 1 - r)) & 1U) ones |= std::uint64_t{1} << term.scope[r];
        }
        obj[Upper(0, idx.At(s_mask, ones))] += term.weight * term.table[beta];
      }
    }
    for (const auto& [rc, coef] : obj) lit.objective.push_back({rc.first, rc.second, coef});
  }
  return relax;
}

Eigen::MatrixXd Relaxation::LiftGram(const Eigen::MatrixXd& moments) const {
  const int rows = index_set.size();
  const int m = static_cast<int>(monomials.size());
  std::unordered_map<std::uint64_t, int> mono_pos;
  for (int t = 0; t < m; ++t) mono_pos.emplace(monomials[t], t);
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(rows, m);
  for (int p = 0; p < rows; ++p) {
    const MomentIndex& a = index_set[p];
    ForEachSuperset(a.ones, a.subset, [&](std::uint64_t tm) {
      basis(p, mono_pos.at(tm)) = ((Popcount(tm) - Popcount(a.ones)) % 2 == 0) ? 1.0 : -1.0;
    });
  }
  Eigen::MatrixXd gram = basis * moments.selfadjointView<Eigen::Upper>() * basis.transpose();
  return 0.5 * (gram + gram.transpose());
}

Eigen::MatrixXd Relaxation::ProjectGram(const Eigen::MatrixXd& gram) const {
  const int m = static_cast<int>(monomials.size());
  std::vector<int> pick(m);
  for (int t = 0; t < m; ++t) pick[t] = index_set.At(monomials[t], monomials[t]);
  Eigen::MatrixXd moments(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) moments(a, b) = gram(pick[a], pick[b]);
  return moments;
}

FeasibilityReport CheckFeasibility(const MomentSolution& solution, const CspInstance& instance,
                                   const FeasibilityTolerances& tol) {
  const IndexSet& idx = solution.index_set;
  const Eigen::MatrixXd& g = solution.gram;
  const int dim = idx.size();
  const int k = solution.level;
  if (g.rows() != dim || g.cols() != dim) throw InputError("gram does not match index set");
  if (idx.n() != instance.n()) throw InputError("solution and instance disagree on n");
  FeasibilityReport report;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (g + g.transpose()),
                                                     Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("eigenvalue computation failed");
  report.min_eigenvalue = dim > 0 ? eig.eigenvalues()(0) : 0.0;
  report.psd_violation = std::max(0.0, -report.min_eigenvalue);

  double cons = std::abs(g(0, 0) - 1.0);
  for (int p = 0; p < dim; ++p) {
    for (int q = p; q < dim; ++q) {
      const MomentIndex& a = idx[p];
      const MomentIndex& b = idx[q];
      const std::uint64_t u = a.subset | b.subset;
      if (Popcount(u) > k) continue;
      double expected = 0.0;
      if (!((a.ones ^ b.ones) & a.subset & b.subset)) {
        const int c = idx.At(u, a.ones | b.ones);
        expected = g(c, c);
      }
      cons = std::max({cons, std::abs(g(p, q) - expected), std::abs(g(q, p) - expected)});
    }
    const MomentIndex& a = idx[p];
    if (a.size() <= k - 1) {
      for (int j = 0; j < instance.n(); ++j) {
        const std::uint64_t bit = std::uint64_t{1} << j;
        if (a.subset & bit) continue;
        const int c0 = idx.At(a.subset | bit, a.ones);
        const int c1 = idx.At(a.subset | bit, a.ones | bit);
        cons = std::max(cons, std::abs(g(c0, c0) + g(c1, c1) - g(p, p)));
      }
    }
  }
  report.consistency_violation = cons;

  // Cardinality in joint form, |Σ_j W_j P(x_j = i, X_S = α) - c_i P(X_S = α)|:
  // the conditional form divides by P(X_S = α) and turns solver-level drift
  // on near-null events into O(1) noise.
  double card_violation = 0.0;
  const auto& w = instance.vertex_weights();
  const auto& c = instance.cardinality().proportions;
  for (int p = 0; p < dim; ++p) {
    const MomentIndex& a = idx[p];
    if (a.size() > k - 1) continue;
    const double prob = g(p, p);
    for (int value = 0; value < 2; ++value) {
      double mass = 0.0;
      for (int j = 0; j < instance.n(); ++j) {
        const std::uint64_t bit = std::uint64_t{1} << j;
        if (a.subset & bit) {
          if ((((a.ones & bit) ? 1 : 0)) == value) mass += w[j] * prob;
        } else {
          const int cj = idx.At(a.subset | bit, value ? (a.ones | bit) : a.ones);
          mass += w[j] * g(cj, cj);
        }
      }
      card_violation = std::max(card_violation, std::abs(mass - c[value] * prob));
    }
  }
  report.cardinality_violation = card_violation;
  report.passed = report.psd_violation <= tol.psd && report.consistency_violation <= tol.consistency &&
                  report.cardinality_violation <= tol.cardinality;
  return report;
}

LocalDistribution LocalDistributionOf(const MomentSolution& solution, std::span<const int> subset,
                                      double tolerance) {
  std::vector<int> vars(subset.begin(), subset.end());
  std::sort(vars.begin(), vars.end());
  if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) {
    throw InputError("subset repeats a variable");
  }
  if (static_cast<int>(vars.size()) > solution.level) {
    throw InputError("subset larger than the solution level");
  }
  const std::uint64_t mask = MaskOf(vars);
  const int s = static_cast<int>(vars.size());
  LocalDistribution dist{vars, std::vector<double>(std::size_t{1} << s)};
  double total = 0.0;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << s); ++a) {
    std::uint64_t ones = 0;
    for (int t = 0; t < s; ++t) {
      if ((a >> (s - 1 - t)) & 1U) ones |= std::uint64_t{1} << vars[t];
    }
    const int p = solution.index_set.At(mask, ones);
    const double prob = std::clamp(solution.gram(p, p), 0.0, 1.0);
    dist.probabilities[a] = prob;
    total += prob;
  }
  if (std::abs(total - 1.0) > tolerance || !(total > 0.0)) {
    throw NumericalError("inconsistent solution: local distribution sums to " +
                         std::to_string(total));
  }
  for (double& p : dist.probabilities) p /= total;
  return dist;
}

double ObjectiveOf(const MomentSolution& solution, const CspInstance& instance) {
  double value = 0.0;
  for (const auto& term : instance.payoffs()) {
    const LocalDistribution mu = LocalDistributionOf(solution, term.scope);
    // mu is ordered by sorted variables; the table by scope order.
    const int t = static_cast<int>(term.scope.size());
    for (std::size_t beta = 0; beta < term.table.size(); ++beta) {
      std::size_t sorted_index = 0;
      for (int r = 0; r < t; ++r) {
        const int var = mu.subset[r];
        const int pos = static_cast<int>(std::find(term.scope.begin(), term.scope.end(), var) -
                                         term.scope.begin());
        sorted_index = sorted_index * 2 + ((beta >> (t - 1 - pos)) & 1U);
      }
      value += term.weight * term.table[beta] * mu.probabilities[sorted_index];
    }
  }
  return value;
}

double SignedInnerProduct(const MomentSolution& solution, int i, int j) {
  const IndexSet& idx = solution.index_set;
  const std::uint64_t bi = std::uint64_t{1} << i;
  const std::uint64_t bj = std::uint64_t{1} << j;
  double total = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const int p = idx.At(bi, a ? bi : 0);
      const int q = idx.At(bj, b ? bj : 0);
      total += ((a == b) ? 1.0 : -1.0) * solution.gram(p, q);
    }
  }
  return total;
}

double Bias(const MomentSolution& solution, int i) {
  const IndexSet& idx = solution.index_set;
  const std::uint64_t bi = std::uint64_t{1} << i;
  return solution.gram(idx.At(bi, 0), 0) - solution.gram(idx.At(bi, bi), 0);
}

}  // namespace gcsp
