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

#ifndef GCSP_LASSERRE_HPP_
#define GCSP_LASSERRE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "gcsp/instance.hpp"

namespace gcsp {

// Index (S, α) of a Lasserre vector v_{S,α}. Both fields are bitmasks over the
// variables: `subset` is S, `ones` marks the variables of S assigned value 1.
struct MomentIndex {
  std::uint64_t subset = 0;
  std::uint64_t ones = 0;

  int size() const;
  std::vector<int> variables() const;  // ascending
  std::vector<int> values() const;     // aligned with variables()
  bool operator==(const MomentIndex&) const = default;
};

// All (S, α) with |S| <= level, ordered by |S|, then S lexicographically,
// then α lexicographically. Position 0 is the empty index (the vector I).
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(int n, int level);

  // Σ_{s<=level} C(n,s)·2^s, saturating at SIZE_MAX.
  static std::size_t CountFor(int n, int level);

  int n() const { return n_; }
  int level() const { return level_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const MomentIndex& operator[](int i) const { return entries_[i]; }
  const std::vector<MomentIndex>& entries() const { return entries_; }

  std::optional<int> Find(std::uint64_t subset, std::uint64_t ones) const;
  int At(std::uint64_t subset, std::uint64_t ones) const;  // throws if absent

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
      return std::hash<std::uint64_t>{}(k.first * 0x9E3779B97F4A7C15ULL ^ k.second);
    }
  };
  int n_ = 0;
  int level_ = 0;
  std::vector<MomentIndex> entries_;
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, int, KeyHash> lookup_;
};

// Level-k Lasserre solution: gram[p][q] = <v_p, v_q> over the index set.
struct MomentSolution {
  int level = 0;
  IndexSet index_set;
  Eigen::MatrixXd gram;
  double objective_value = 0.0;
};

// Distribution over [2]^subset; probabilities indexed lexicographically with
// the first (smallest) variable most significant.
struct LocalDistribution {
  std::vector<int> subset;
  std::vector<double> probabilities;
};

// coef · X[row][col] with row <= col (each symmetric entry counted once).
struct MatrixEntry {
  int row = 0;
  int col = 0;
  double coef = 0.0;
};

struct AffineConstraint {
  std::vector<MatrixEntry> terms;
  double rhs = 0.0;
};

// max/min <C, X> subject to the affine constraints and X ⪰ 0.
struct ConicProgram {
  int dim = 0;
  std::vector<AffineConstraint> constraints;
  std::vector<MatrixEntry> objective;
  Sense sense = Sense::kMaximize;
};

inline constexpr std::size_t kIndexCap = 6000;
inline constexpr int kMaxLevelAboveTwoVariables = 12;

// The relaxation in two equivalent forms. `program` is indexed by the
// (S, α) index set. `reduced` is indexed by the 0/1 monomials x_T, |T| <= k;
// every (S, α) indicator is an inclusion-exclusion combination of monomials,
// so gram = B·M·Bᵀ maps feasible points of one onto the other.
struct Relaxation {
  int level = 0;
  IndexSet index_set;
  ConicProgram program;  // empty unless built with literal = true
  std::vector<std::uint64_t> monomials;
  ConicProgram reduced;

  // gram = B·M·Bᵀ for a reduced-form moment matrix M.
  Eigen::MatrixXd LiftGram(const Eigen::MatrixXd& monomial_moments) const;
  // Moment matrix of the monomials from a literal gram (rows of B at the
  // all-ones assignments pick out the monomials).
  Eigen::MatrixXd ProjectGram(const Eigen::MatrixXd& gram) const;
};

// Throws CapacityError when the index set exceeds kIndexCap, or when
// level >= 3 on more than kMaxLevelAboveTwoVariables variables.
Relaxation BuildRelaxation(const CspInstance& instance, int level, bool literal = true);

struct FeasibilityTolerances {
  double psd = 1e-5;
  double consistency = 1e-5;
  double cardinality = 1e-5;
};

struct FeasibilityReport {
  double min_eigenvalue = 0.0;
  double psd_violation = 0.0;
  double consistency_violation = 0.0;
  double cardinality_violation = 0.0;
  bool passed = false;
};

FeasibilityReport CheckFeasibility(const MomentSolution& solution, const CspInstance& instance,
                                   const FeasibilityTolerances& tolerances = {});

// μ_S read off the diagonal of the gram. Entries are clipped to [0,1] and
// renormalized when the total drifts by at most `tolerance`; larger drift is
// an inconsistent solution.
LocalDistribution LocalDistributionOf(const MomentSolution& solution, std::span<const int> subset,
                                      double tolerance = 1e-6);

// E_{S~W} Σ_β P_S(β) μ_S(β) computed from the local distributions.
double ObjectiveOf(const MomentSolution& solution, const CspInstance& instance);

// <v_i, v_j> for the ±1 vectors v_i = v_{i,0} - v_{i,1}.
double SignedInnerProduct(const MomentSolution& solution, int i, int j);
// <v_i, I>: the bias of variable i.
double Bias(const MomentSolution& solution, int i);

std::uint64_t MaskOf(std::span<const int> variables);

}  // namespace gcsp

#endif  // GCSP_LASSERRE_HPP_
