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

#include "gcsp/dictator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>

#include "gcsp/error.hpp"

namespace gcsp {
namespace {

using Table2 = std::array<std::array<double, 2>, 2>;  // [-1, +1] x [-1, +1]

void CheckFunction(const CutFunction& f) {
  if (f.r < 1 || f.r > kMaxGadgetDimension) throw InputError("function dimension out of range");
  if (f.values.size() != (std::size_t{1} << f.r)) throw InputError("function table has the wrong size");
  for (double v : f.values) {
    if (!(v >= -1.0 && v <= 1.0)) throw InputError("function values must lie in [-1, 1]");
  }
}

void CheckMatch(const DictGadget& g, const CutFunction& f) {
  CheckFunction(f);
  if (f.r != g.r) throw InputError("function and gadget dimensions differ");
}

// P(label = +1) for every variable.
std::vector<double> PlusMarginals(const MomentSolution& solution, int n) {
  std::vector<double> p(n);
  for (int i = 0; i < n; ++i) {
    const int v[] = {i};
    p[i] = LocalDistributionOf(solution, v).probabilities[0];
  }
  return p;
}

// Joint label table of a binary term, first scope variable as the row.
Table2 EdgeTable(const MomentSolution& solution, const PayoffTerm& term) {
  const int u = term.scope[0], v = term.scope[1];
  const int vars[] = {u, v};
  const LocalDistribution mu = LocalDistributionOf(solution, vars);
  Table2 t{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const int vu = LabelToValue(a ? 1 : -1);
      const int vv = LabelToValue(b ? 1 : -1);
      t[a][b] = u < v ? mu.probabilities[vu * 2 + vv] : mu.probabilities[vv * 2 + vu];
    }
  }
  return t;
}

// K[a'][a] = (1-ε)[a = a'] + ε·P(a).
Table2 Noise(double plus, double epsilon) {
  const double p[2] = {1.0 - plus, plus};
  Table2 k{};
  for (int from = 0; from < 2; ++from) {
    for (int to = 0; to < 2; ++to) k[from][to] = (1.0 - epsilon) * (from == to) + epsilon * p[to];
  }
  return k;
}

// In-place basis change of one coordinate pair: (f(-1), f(+1)) -> (c_0, c_1).
void ForwardPair(double& lo, double& hi, double bias) {
  const double p = 0.5 * (1.0 + bias), q = 1.0 - p;
  const double sigma = std::sqrt(std::max(0.0, 1.0 - bias * bias));
  if (sigma < 1e-12) {
    lo = bias > 0.0 ? hi : lo;
    hi = 0.0;
    return;
  }
  const double chi_plus = (1.0 - bias) / sigma;
  const double chi_minus = (-1.0 - bias) / sigma;
  const double c0 = p * hi + q * lo;
  const double c1 = p * hi * chi_plus + q * lo * chi_minus;
  lo = c0;
  hi = c1;
}

}  // namespace

CutFunction Dictator(int r, int coordinate) {
  if (coordinate < 0 || coordinate >= r) throw InputError("dictator coordinate out of range");
  CutFunction f{r, std::vector<double>(std::size_t{1} << r)};
  for (std::uint32_t x = 0; x < f.values.size(); ++x) f.values[x] = Coordinate(x, r, coordinate);
  return f;
}

CutFunction Constant(int r, double value) {
  return CutFunction{r, std::vector<double>(std::size_t{1} << r, value)};
}

CutFunction BooleanFunction(int r, std::uint64_t id) {
  if (r < 1 || r > 6) throw InputError("boolean function id needs 1 <= R <= 6");
  CutFunction f{r, std::vector<double>(std::size_t{1} << r)};
  for (std::uint32_t x = 0; x < f.values.size(); ++x) f.values[x] = ((id >> x) & 1U) ? 1.0 : -1.0;
  return f;
}

DictGadget BuildGadget(const MomentSolution& solution, const CspInstance& instance,
                       double epsilon, int r) {
  if (r < 1) throw InputError("gadget dimension must be >= 1");
  if (r > kMaxGadgetDimension) {
    const double bytes = std::pow(4.0, r) * sizeof(double) * 2.0;
    throw CapacityError("gadget dimension " + std::to_string(r) + " exceeds the cap of " +
                        std::to_string(kMaxGadgetDimension) + " (edge table would need " +
                        std::to_string(bytes / (1 << 20)) + " MiB)");
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw InputError("epsilon must lie in [0, 1]");
  if (!instance.is_cut_type()) throw InputError("gadgets are defined for cut instances");
  if (solution.level < 2) throw InputError("gadget needs a level >= 2 solution");
  const int n = instance.n();
  const std::vector<double> plus = PlusMarginals(solution, n);

  DictGadget g;
  g.r = r;
  g.epsilon = epsilon;
  g.source_vertex_weights = instance.vertex_weights();
  g.source_bias.resize(n);
  for (int i = 0; i < n; ++i) g.source_bias[i] = 2.0 * plus[i] - 1.0;
  g.source_value = ObjectiveOf(solution, instance);

  const std::size_t np = g.points();
  g.vertex_weights.assign(np, 0.0);
  for (int i = 0; i < n; ++i) {
    const double wi = instance.vertex_weights()[i];
    if (wi == 0.0) continue;
    for (std::uint32_t x = 0; x < np; ++x) {
      double prob = wi;
      for (int l = 0; l < r; ++l) prob *= Coordinate(x, r, l) > 0 ? plus[i] : 1.0 - plus[i];
      g.vertex_weights[x] += prob;
    }
  }

  g.edge_weights.assign(np * np, 0.0);
  std::vector<double> table, next;
  for (const PayoffTerm& term : instance.payoffs()) {
    if (term.scope.size() != 2) throw InputError("gadgets need binary payoff terms");
    const Table2 mu = EdgeTable(solution, term);
    const Table2 ku = Noise(plus[term.scope[0]], epsilon);
    const Table2 kv = Noise(plus[term.scope[1]], epsilon);
    Table2 nu{};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        for (int a0 = 0; a0 < 2; ++a0) {
          for (int b0 = 0; b0 < 2; ++b0) nu[a][b] += mu[a0][b0] * ku[a0][a] * kv[b0][b];
        }
      }
    }
    // R-fold Kronecker power; each step appends the next coordinate as the
    // new least significant bit of both x and y.
    table.assign(1, 1.0);
    std::size_t side = 1;
    for (int l = 0; l < r; ++l) {
      next.assign(4 * side * side, 0.0);
      for (std::size_t x = 0; x < side; ++x) {
        for (std::size_t y = 0; y < side; ++y) {
          const double t = table[x * side + y];
          for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) next[(2 * x + a) * 2 * side + 2 * y + b] = t * nu[a][b];
          }
        }
      }
      table.swap(next);
      side *= 2;
    }
    for (std::size_t k = 0; k < table.size(); ++k) g.edge_weights[k] += term.weight * table[k];
  }
  return g;
}

double DictValue(const DictGadget& gadget, const CutFunction& f) {
  CheckMatch(gadget, f);
  const std::size_t np = gadget.points();
  double value = 0.0;
  for (std::size_t x = 0; x < np; ++x) {
    for (std::size_t y = 0; y < np; ++y) {
      value += gadget.edge_weights[x * np + y] * (1.0 - f.values[x] * f.values[y]);
    }
  }
  return 0.5 * value;
}

double GadgetBalance(const DictGadget& gadget, const CutFunction& f) {
  CheckMatch(gadget, f);
  double balance = 0.0;
  for (std::size_t x = 0; x < gadget.points(); ++x) balance += gadget.vertex_weights[x] * f.values[x];
  return balance;
}

CompletenessReport Completeness(const DictGadget& gadget, double balance_tolerance,
                                double value_slack) {
  CompletenessReport report;
  report.sdp_value = gadget.source_value;
  report.min_value = 2.0;
  for (int l = 0; l < gadget.r; ++l) {
    const CutFunction f = Dictator(gadget.r, l);
    const double v = DictValue(gadget, f);
    const double b = GadgetBalance(gadget, f);
    report.dictator_values.push_back(v);
    report.dictator_balances.push_back(b);
    if (v < report.min_value) {
      report.min_value = v;
      report.worst_dictator = l;
    }
    report.max_abs_balance = std::max(report.max_abs_balance, std::abs(b));
  }
  const double floor = gadget.source_value - 2.0 * gadget.epsilon - value_slack;
  const bool value_ok = report.min_value >= floor;
  const bool balance_ok = report.max_abs_balance <= balance_tolerance;
  report.passed = value_ok && balance_ok;
  if (!value_ok) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "dictator %d has value %.10g below %.10g",
                  report.worst_dictator, report.min_value, floor);
    report.message = buf;
  } else if (!balance_ok) {
    int worst = 0;
    for (int l = 0; l < gadget.r; ++l) {
      if (std::abs(report.dictator_balances[l]) > std::abs(report.dictator_balances[worst])) worst = l;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "dictator %d has balance %.3g", worst,
                  report.dictator_balances[worst]);
    report.message = buf;
  }
  return report;
}

std::vector<double> BiasedFourier(const CutFunction& f, double bias) {
  CheckFunction(f);
  if (!(bias >= -1.0 && bias <= 1.0)) throw InputError("bias must lie in [-1, 1]");
  std::vector<double> c = f.values;
  for (int l = 0; l < f.r; ++l) {
    const std::uint32_t bit = std::uint32_t{1} << (f.r - 1 - l);
    for (std::uint32_t x = 0; x < c.size(); ++x) {
      if (!(x & bit)) ForwardPair(c[x], c[x | bit], bias);
    }
  }
  return c;
}

double Influence(const CutFunction& f, int coordinate, double bias) {
  if (coordinate < 0 || coordinate >= f.r) throw InputError("coordinate out of range");
  const std::vector<double> c = BiasedFourier(f, bias);
  const std::uint32_t bit = std::uint32_t{1} << (f.r - 1 - coordinate);
  double inf = 0.0;
  for (std::uint32_t s = 0; s < c.size(); ++s) {
    if (s & bit) inf += c[s] * c[s];
  }
  return inf;
}

SoundnessResult SoundnessEnumerate(const DictGadget& gadget, const SoundnessOptions& options) {
  const int r = gadget.r;
  const std::size_t np = gadget.points();
  std::uint64_t total = 0;
  if (options.mode == SoundnessMode::kBooleanExhaustive) {
    if (r > 4) throw CapacityError("boolean enumeration needs R <= 4");
    total = std::uint64_t{1} << np;
  } else {
    if (r > 2) throw CapacityError("grid enumeration needs R <= 2");
    if (options.grid_points < 2) throw InputError("grid needs at least 2 points");
    total = 1;
    for (std::size_t x = 0; x < np; ++x) total *= options.grid_points;
  }
  // Distinct biases of the vertices that carry weight.
  std::vector<double> biases;
  for (std::size_t i = 0; i < gadget.source_bias.size(); ++i) {
    if (gadget.source_vertex_weights[i] <= 0.0) continue;
    const double b = gadget.source_bias[i];
    if (std::none_of(biases.begin(), biases.end(), [b](double o) { return std::abs(o - b) < 1e-12; })) {
      biases.push_back(b);
    }
  }

  SoundnessResult result;
  result.tau = options.tau;
  CutFunction f{r, std::vector<double>(np)};
  for (std::uint64_t id = 0; id < total; ++id) {
    if (options.mode == SoundnessMode::kBooleanExhaustive) {
      for (std::size_t x = 0; x < np; ++x) f.values[x] = ((id >> x) & 1U) ? 1.0 : -1.0;
    } else {
      std::uint64_t rest = id;
      for (std::size_t x = 0; x < np; ++x) {
        const int k = static_cast<int>(rest % options.grid_points);
        rest /= options.grid_points;
        f.values[x] = -1.0 + 2.0 * k / (options.grid_points - 1);
      }
    }
    ++result.evaluated;
    const double balance = GadgetBalance(gadget, f);
    const bool balanced = std::abs(balance) <= options.balance_tolerance;
    if (!balanced && !options.keep_rows) continue;
    double max_inf = 0.0;
    for (double b : biases) {
      const std::vector<double> c = BiasedFourier(f, b);
      for (int l = 0; l < r; ++l) {
        const std::uint32_t bit = std::uint32_t{1} << (r - 1 - l);
        double inf = 0.0;
        for (std::uint32_t s = 0; s < c.size(); ++s) {
          if (s & bit) inf += c[s] * c[s];
        }
        max_inf = std::max(max_inf, inf);
      }
    }
    const double value = DictValue(gadget, f);
    if (options.keep_rows) result.rows.push_back({id, balance, max_inf, value});
    if (!balanced || max_inf > options.tau) continue;
    ++result.admissible;
    if (result.empty || value > result.max_value) {
      result.empty = false;
      result.max_value = value;
      result.witness_id = id;
      result.witness = f;
    }
  }
  return result;
}

std::vector<double> RoundFProbabilities(const BiasProfile& profile, const CutFunction& f,
                                        double epsilon, std::uint64_t seed) {
  CheckFunction(f);
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw InputError("epsilon must lie in [0, 1]");
  const int r = f.r;
  const Eigen::Index dim = profile.w.cols();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd zeta(dim, r);
  for (int j = 0; j < r; ++j) {
    for (Eigen::Index k = 0; k < dim; ++k) zeta(k, j) = normal(rng);
  }
  const Eigen::MatrixXd projections = profile.w * zeta;  // <w_i, ζ^(j)>

  std::vector<double> out(profile.n());
  std::vector<double> c;
  for (int i = 0; i < profile.n(); ++i) {
    const double mu = profile.bias[i];
    const double sigma = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    c = BiasedFourier(f, std::clamp(mu, -1.0, 1.0));
    // Evaluate Σ_S c_S (1-ε)^{|S|} Π_{ℓ∈S} χ(g^ℓ), where χ(g) = (g - μ)/σ,
    // by folding one coordinate at a time from the least significant.
    std::size_t len = c.size();
    for (int l = r - 1; l >= 0; --l) {
      const double z = sigma < 1e-12 ? 0.0 : projections(i, l) / sigma;
      len /= 2;
      for (std::size_t x = 0; x < len; ++x) c[x] = c[2 * x] + (1.0 - epsilon) * z * c[2 * x + 1];
    }
    out[i] = std::clamp(c[0], -1.0, 1.0);
  }
  return out;
}

RoundedAssignment RoundWithFunction(const BiasProfile& profile, const CspInstance& instance,
                                    const CutFunction& f, double epsilon, std::uint64_t seed) {
  if (profile.n() != instance.n()) throw InputError("profile and instance disagree on n");
  const std::vector<double> p = RoundFProbabilities(profile, f, epsilon, seed);
  std::mt19937_64 coins(SubSeed(seed, 1));
  RoundedAssignment out;
  out.seed = seed;
  out.labels.resize(profile.n());
  for (int i = 0; i < profile.n(); ++i) {
    const double u = static_cast<double>(coins() >> 11) * 0x1.0p-53;
    out.labels[i] = u < 0.5 * (1.0 + p[i]) ? 1 : -1;
  }
  Score(instance, out);
  return out;
}

}  // namespace gcsp
