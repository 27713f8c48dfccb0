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

#ifndef GCSP_LANDSCAPE_HPP_
#define GCSP_LANDSCAPE_HPP_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace gcsp {

// P(Z1 <= t1, Z2 <= t2) for a standard bivariate normal with correlation rho.
// Plackett's identity integrated in θ = asin(r); absolute error ~1e-13.
double BvnCdf(double t1, double t2, double rho);

// One payoff term under the rounding: biases of the two endpoints and the
// correlation of their normalized orthogonal parts.
struct EdgeConfig {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double rho = 0.0;
};

// E[y1 y2] under the SDP local distribution.
double PairMoment(const EdgeConfig& config);
// p_ab = (1 + a·μ1 + b·μ2 + ab·m)/4 >= -tolerance for all signs a, b.
bool IsValid(const EdgeConfig& config, double tolerance = 1e-12);

double SeparationProb(const EdgeConfig& config);

// Literal signs: +1 is the positive literal (true at label +1).
struct PayoffKind {
  enum class Type { kCut, kClause } type = Type::kCut;
  int sign1 = 1;
  int sign2 = 1;

  static PayoffKind Cut() { return {}; }
  static PayoffKind Clause(int s1, int s2) { return {Type::kClause, s1, s2}; }
};

PayoffKind ParsePayoffKind(std::string_view name);  // "cut" or "2sat"
std::string PayoffKindName(const PayoffKind& kind);

double EdgeSdpValue(const PayoffKind& kind, const EdgeConfig& config);
double EdgeRoundedValue(const PayoffKind& kind, const EdgeConfig& config);

struct AxisRange {
  double lo = -1.0;
  double hi = 1.0;
};

struct RatioSearchOptions {
  int resolution = 200;  // points per axis, >= 50 (a degenerate range uses one)
  int refinement_rounds = 40;
  int refine_best = 8;   // cells refined
  AxisRange mu1, mu2, rho;
  double min_sdp_value = 1e-6;
};

struct GridCell {
  EdgeConfig config;
  double separation = 0.0;
  double sdp = 0.0;
  double rounded = 0.0;
  double ratio = 0.0;
};

struct RefinementStep {
  int seed_cell = 0;
  int round = 0;
  EdgeConfig config;
  double ratio = 0.0;
  double step = 0.0;
};

struct RatioCertificate {
  std::string payoff;
  int resolution = 0;
  double grid_minimum = 0.0;
  double minimum = 0.0;
  EdgeConfig argmin;
  double lipschitz = 0.0;         // near the grid argmin
  double lipschitz_global = 0.0;  // over all adjacent valid cells
  double error_bar = 0.0;
  long long cells = 0;
  long long valid_cells = 0;
  std::vector<RefinementStep> trace;
};

// Minimum of rounded/sdp value over valid configs. For clauses only the
// (+,+) clause is searched; the others are sign-flips of it. `on_cell`, if
// set, sees every valid grid cell in index order.
RatioCertificate RatioSearch(const PayoffKind& kind, const RatioSearchOptions& options,
                             const std::function<void(const GridCell&)>& on_cell = {});

struct SqrtEpsPoint {
  double epsilon = 0.0;
  double worst_separation = 0.0;
  EdgeConfig argmax;
};

struct SqrtEpsCurve {
  std::vector<SqrtEpsPoint> points;
  double exponent = 0.0;     // β in worst ≈ C·ε^β
  double coefficient = 0.0;  // C
};

// Worst separation of a cut term whose SDP value is at most ε. Separation is
// non-increasing in rho, so for fixed biases the worst rho is the smallest
// one meeting the constraint; the search runs over (μ1, μ2) only.
SqrtEpsCurve SqrtEpsCurveOf(const std::vector<double>& epsilons, int resolution = 200,
                            int refinement_rounds = 40);

}  // namespace gcsp

#endif  // GCSP_LANDSCAPE_HPP_
