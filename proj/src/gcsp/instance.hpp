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

#ifndef GCSP_INSTANCE_HPP_
#define GCSP_INSTANCE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gcsp {

enum class ProblemKind { kMaxCutBisection, kMinCutBisection, kAlphaCut, kMax2Sat };
enum class Sense { kMaximize, kMinimize };

std::string_view ProblemKindName(ProblemKind kind);
ProblemKind ParseProblemKind(std::string_view name);

// Target fraction of (weighted) variables taking each domain value.
struct CardinalityFunction {
  std::vector<double> proportions;
};

// A payoff P: [q]^scope -> [0,1]. The table is indexed lexicographically with
// the first scope variable most significant.
struct PayoffTerm {
  std::vector<int> scope;
  std::vector<double> table;
  double weight = 0.0;

  double Value(std::span<const int> local, int q = 2) const;
};

// Domain value 0 is the +1 side of a cut, value 1 the -1 side.
inline int ValueToLabel(int value) { return value == 0 ? 1 : -1; }
inline int LabelToValue(int label) { return label > 0 ? 0 : 1; }

PayoffTerm CutTerm(int u, int v, double weight);
// Clause (u ∨ v) over literals; a literal is true when its variable takes
// label +1 (positive) or -1 (negated).
PayoffTerm ClauseTerm(int u, bool u_positive, int v, bool v_positive, double weight);

// An immutable CSP with a single global cardinality constraint.
class CspInstance {
 public:
  CspInstance(int n, int q, std::vector<PayoffTerm> payoffs,
              std::vector<double> vertex_weights, CardinalityFunction cardinality,
              ProblemKind kind, double kind_parameter = 0.0);

  int n() const { return n_; }
  int q() const { return q_; }
  ProblemKind kind() const { return kind_; }
  double kind_parameter() const { return kind_parameter_; }
  Sense sense() const {
    return kind_ == ProblemKind::kMinCutBisection ? Sense::kMinimize : Sense::kMaximize;
  }
  bool is_cut_type() const { return kind_ != ProblemKind::kMax2Sat; }
  const std::vector<PayoffTerm>& payoffs() const { return payoffs_; }
  const std::vector<double>& vertex_weights() const { return vertex_weights_; }
  const CardinalityFunction& cardinality() const { return cardinality_; }
  bool uniform_vertex_weights() const;

  // Σ_S w_S · P_S(assignment|_S); assignment holds domain values in [q].
  double Evaluate(std::span<const int> assignment) const;

  // Weighted frequency of each domain value.
  std::vector<double> Balance(std::span<const int> assignment) const;

  // Total payoff weight of the terms touching each variable.
  std::vector<double> WeightedDegrees() const;

 private:
  int n_;
  int q_;
  std::vector<PayoffTerm> payoffs_;
  std::vector<double> vertex_weights_;
  CardinalityFunction cardinality_;
  ProblemKind kind_;
  double kind_parameter_;
};

// Edge-list document: one "u v [weight]" per line, 0-based ids. Optional
// directives: "# kind <maxcut-bisection|mincut-bisection|alpha-cut A|max2sat>",
// "# n <count>", and "vertex <id> <weight>" lines. For max2sat a leading '-'
// or '~' negates a literal.
CspInstance LoadEdgeList(std::string_view text);
CspInstance LoadEdgeListFile(const std::string& path);

enum class Family { kCycle, kComplete, kGnp, kTwoCliques, kPlanted };
Family ParseFamily(std::string_view name);

struct GenerateParams {
  double edge_probability = 0.5;  // gnp
  double planted_epsilon = 0.05;  // planted: fraction of edges inside the halves
  int planted_edges = 0;          // planted: total edges (0 means 3n)
  ProblemKind kind = ProblemKind::kMaxCutBisection;
  double kind_parameter = 0.0;  // alpha-cut fraction, or max2sat c_0 when > 0
};

CspInstance Generate(Family family, int n, std::uint64_t seed,
                     const GenerateParams& params = {});

}  // namespace gcsp

#endif  // GCSP_INSTANCE_HPP_
