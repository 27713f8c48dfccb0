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

#ifndef GCSP_DICTATOR_HPP_
#define GCSP_DICTATOR_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "gcsp/instance.hpp"
#include "gcsp/lasserre.hpp"
#include "gcsp/rounding.hpp"

namespace gcsp {

// Points of {±1}^R are indexed 0..2^R-1; coordinate ℓ of point x is +1 iff
// bit R-1-ℓ of x is set, so coordinate 0 is the most significant and -1
// sorts before +1.
inline int Coordinate(std::uint32_t x, int r, int l) { return ((x >> (r - 1 - l)) & 1U) ? 1 : -1; }

inline constexpr int kMaxGadgetDimension = 12;

// Weighted graph on {±1}^R. edge_weights is the ordered table over (x, y),
// row-major, summing to 1; x is the noisy copy of the first endpoint of the
// sampled payoff term.
struct DictGadget {
  int r = 0;
  double epsilon = 0.0;
  std::vector<double> vertex_weights;  // W(x)
  std::vector<double> edge_weights;
  // Source data kept for influence filters and provenance.
  std::vector<double> source_bias;           // μ_i as a ±1 bias
  std::vector<double> source_vertex_weights;
  double source_value = 0.0;                 // val(V)

  std::uint32_t points() const { return std::uint32_t{1} << r; }
};

struct CutFunction {
  int r = 0;
  std::vector<double> values;  // in [-1, 1], one per point
};

CutFunction Dictator(int r, int coordinate);
CutFunction Constant(int r, double value);
// Boolean function whose truth table is the bits of `id` (bit x set: +1).
CutFunction BooleanFunction(int r, std::uint64_t id);

// Requires a cut-type instance with binary payoff scopes and a level >= 2
// solution. Throws CapacityError above kMaxGadgetDimension.
DictGadget BuildGadget(const MomentSolution& solution, const CspInstance& instance,
                       double epsilon, int r);

// ½ Σ w(x,y)(1 - F(x)F(y))
double DictValue(const DictGadget& gadget, const CutFunction& f);
// E_{x~W} F(x)
double GadgetBalance(const DictGadget& gadget, const CutFunction& f);

struct CompletenessReport {
  double sdp_value = 0.0;
  std::vector<double> dictator_values;
  std::vector<double> dictator_balances;
  double min_value = 0.0;
  int worst_dictator = 0;
  double max_abs_balance = 0.0;
  bool passed = false;
  std::string message;
};

CompletenessReport Completeness(const DictGadget& gadget, double balance_tolerance = 1e-9,
                                double value_slack = 1e-9);

// Coefficients of F in the basis χ_S(x) = Π_{ℓ∈S} (x^ℓ - μ)/√(1-μ²) of the
// product measure with bias μ; index bit R-1-ℓ marks ℓ ∈ S.
std::vector<double> BiasedFourier(const CutFunction& f, double bias);

// E_{x^{-ℓ}} Var_{x^ℓ} F under the product measure with bias μ.
double Influence(const CutFunction& f, int coordinate, double bias);

enum class SoundnessMode { kBooleanExhaustive, kGrid };

struct SoundnessOptions {
  double tau = 1.0;
  SoundnessMode mode = SoundnessMode::kBooleanExhaustive;
  double balance_tolerance = 1e-6;
  int grid_points = 9;  // mesh on [-1, 1], grid mode
  bool keep_rows = false;
};

struct SoundnessRow {
  std::uint64_t id = 0;
  double balance = 0.0;
  double max_influence = 0.0;
  double value = 0.0;
};

struct SoundnessResult {
  double tau = 0.0;
  std::uint64_t evaluated = 0;
  std::uint64_t admissible = 0;
  bool empty = true;
  double max_value = 0.0;
  std::uint64_t witness_id = 0;
  CutFunction witness;
  std::vector<SoundnessRow> rows;
};

// Max DictValue over functions with |balance| <= tolerance and every
// influence (each coordinate, each source bias with positive weight) <= τ.
SoundnessResult SoundnessEnumerate(const DictGadget& gadget, const SoundnessOptions& options);

// p*_i = clamp(T_{1-ε}F_i(g_i)) with g_i^{(j)} = μ_i + <w_i, ζ^{(j)}> and
// shared Gaussian ζ^{(1..R)} drawn from `seed`.
std::vector<double> RoundFProbabilities(const BiasProfile& profile, const CutFunction& f,
                                        double epsilon, std::uint64_t seed);

// Labels +1 with probability (1 + p*_i)/2; the coins use SubSeed(seed, 1).
RoundedAssignment RoundWithFunction(const BiasProfile& profile, const CspInstance& instance,
                                    const CutFunction& f, double epsilon, std::uint64_t seed);

}  // namespace gcsp

#endif  // GCSP_DICTATOR_HPP_
