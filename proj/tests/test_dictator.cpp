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


#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "gcsp/dictator.hpp"
#include "gcsp/error.hpp"
#include "gcsp/rounding.hpp"

using namespace gcsp;
using namespace gcsp::testing;

namespace {

// P(label = a) for a variable with ±1 bias mu.
double LabelProb(double mu, int a) { return (1.0 + a * mu) / 2.0; }

// E_{x^{-l}} Var_{x^l} F straight from the definition.
double InfluenceByEnumeration(const CutFunction& f, int l, double mu) {
  const int r = f.r;
  double total = 0.0;
  for (std::uint32_t x = 0; x < (1U << r); ++x) {
    if (Coordinate(x, r, l) != 1) continue;
    const std::uint32_t y = x ^ (1U << (r - 1 - l));  // same point with x^l = -1
    double weight = 1.0;
    for (int k = 0; k < r; ++k) {
      if (k != l) weight *= LabelProb(mu, Coordinate(x, r, k));
    }
    const double p = LabelProb(mu, 1), q = LabelProb(mu, -1);
    const double mean = p * f.values[x] + q * f.values[y];
    const double var = p * (f.values[x] - mean) * (f.values[x] - mean) +
                       q * (f.values[y] - mean) * (f.values[y] - mean);
    total += weight * var;
  }
  return total;
}

CutFunction Majority3() {
  CutFunction f{3, std::vector<double>(8)};
  for (std::uint32_t x = 0; x < 8; ++x) {
    const int s = Coordinate(x, 3, 0) + Coordinate(x, 3, 1) + Coordinate(x, 3, 2);
    f.values[x] = s > 0 ? 1.0 : -1.0;
  }
  return f;
}

CutFunction Negate(CutFunction f) {
  for (double& v : f.values) v = -v;
  return f;
}

// A single edge whose local distribution is deliberately asymmetric.
MomentSolution SkewedEdge() {
  return ExactMixtureMoments(SingleEdge(), 2, {{0, 1}, {1, 0}, {0, 0}}, {0.5, 0.3, 0.2});
}

}  // namespace

TEST_SUITE("dictator") {
  TEST_CASE("one round without noise is the edge distribution") {
    const MomentSolution s = SkewedEdge();
    const DictGadget g = BuildGadget(s, SingleEdge(), 0.0, 1);
    REQUIRE(g.edge_weights.size() == 4);
    const int pair[] = {0, 1};
    const auto mu = LocalDistributionOf(s, pair).probabilities;
    // Point 1 is label +1 (domain value 0), point 0 is label -1.
    for (std::uint32_t x = 0; x < 2; ++x) {
      for (std::uint32_t y = 0; y < 2; ++y) {
        CHECK(g.edge_weights[x * 2 + y] == doctest::Approx(mu[(1 - x) * 2 + (1 - y)]).epsilon(1e-14));
      }
    }
    CHECK(DictValue(g, Dictator(1, 0)) == doctest::Approx(mu[1] + mu[2]).epsilon(1e-14));
  }

  TEST_CASE("full noise gives products of marginals") {
    const MomentSolution s = SkewedEdge();
    const DictGadget g = BuildGadget(s, SingleEdge(), 1.0, 2);
    const double mu0 = g.source_bias[0], mu1 = g.source_bias[1];
    for (std::uint32_t x = 0; x < 4; ++x) {
      for (std::uint32_t y = 0; y < 4; ++y) {
        double expect = 1.0;
        for (int l = 0; l < 2; ++l) {
          expect *= LabelProb(mu0, Coordinate(x, 2, l)) * LabelProb(mu1, Coordinate(y, 2, l));
        }
        CHECK(g.edge_weights[x * 4 + y] == doctest::Approx(expect).epsilon(1e-13));
      }
    }
  }

  TEST_CASE("weights are normalized and rows match first-endpoint visibility") {
    std::mt19937_64 rng(1);
    const CspInstance g6 = Generate(Family::kCycle, 6, 0);
    const MomentSolution s = RandomBalancedMixture(g6, 2, 3, rng);
    for (double eps : {0.0, 0.1, 0.5}) {
      const DictGadget g = BuildGadget(s, g6, eps, 3);
      double total = 0.0, wsum = 0.0;
      for (double w : g.edge_weights) {
        CHECK(w >= 0.0);
        total += w;
      }
      for (double w : g.vertex_weights) wsum += w;
      CHECK(std::abs(total - 1.0) < 1e-12);
      CHECK(std::abs(wsum - 1.0) < 1e-12);
      for (std::uint32_t x = 0; x < 8; ++x) {
        double row = 0.0, visible = 0.0, vertex = 0.0;
        for (std::uint32_t y = 0; y < 8; ++y) row += g.edge_weights[x * 8 + y];
        for (const auto& term : g6.payoffs()) {
          double p = term.weight;
          for (int l = 0; l < 3; ++l) p *= LabelProb(g.source_bias[term.scope[0]], Coordinate(x, 3, l));
          visible += p;
        }
        for (int i = 0; i < 6; ++i) {
          double p = g6.vertex_weights()[i];
          for (int l = 0; l < 3; ++l) p *= LabelProb(g.source_bias[i], Coordinate(x, 3, l));
          vertex += p;
        }
        CHECK(std::abs(row - visible) < 1e-12);
        CHECK(std::abs(g.vertex_weights[x] - vertex) < 1e-12);
      }
    }
  }

  TEST_CASE("cut values") {
    const DictGadget g = BuildGadget(C4Mixture(), C4(), 0.1, 3);
    CHECK(DictValue(g, Constant(3, 1.0)) == 0.0);
    const CutFunction maj = Majority3();
    CHECK(DictValue(g, maj) == doctest::Approx(DictValue(g, Negate(maj))).epsilon(1e-14));
    for (std::uint64_t id : {3ULL, 90ULL, 200ULL}) {
      const CutFunction f = BooleanFunction(3, id);
      CHECK(DictValue(g, f) == doctest::Approx(DictValue(g, Negate(f))).epsilon(1e-14));
    }
  }

  TEST_CASE("balances") {
    const DictGadget g = BuildGadget(C4Mixture(), C4(), 0.1, 3);
    for (int l = 0; l < 3; ++l) CHECK(std::abs(GadgetBalance(g, Dictator(3, l))) < 1e-12);
    CHECK(GadgetBalance(g, Constant(3, 1.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(GadgetBalance(g, Majority3())) < 1e-12);  // odd F, uniform W
  }

  TEST_CASE("completeness") {
    const MomentSolution mix = C4Mixture();
    const double val = ObjectiveOf(mix, C4());
    const CompletenessReport exact = Completeness(BuildGadget(mix, C4(), 0.0, 3));
    CHECK(exact.passed);
    for (double v : exact.dictator_values) CHECK(v == doctest::Approx(val).epsilon(1e-12));
    const CompletenessReport noisy = Completeness(BuildGadget(mix, C4(), 0.1, 3));
    CHECK(noisy.passed);
    CHECK(noisy.min_value >= val - 0.2 - 1e-9);
    CHECK(noisy.max_abs_balance <= 1e-9);
  }

  TEST_CASE("unbalanced sources fail completeness by name") {
    const MomentSolution s = SkewedEdge();
    const CompletenessReport r = Completeness(BuildGadget(s, SingleEdge(), 0.0, 2));
    CHECK_FALSE(r.passed);
    CHECK(r.message.find("balance") != std::string::npos);
  }

  TEST_CASE("influences") {
    const CutFunction d = Dictator(3, 1);
    CHECK(Influence(d, 1, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(Influence(d, 0, 0.0)) < 1e-14);
    CHECK(std::abs(Influence(Constant(3, 0.4), 2, 0.3)) < 1e-14);
    const CutFunction maj = Majority3();
    for (int l = 0; l < 3; ++l) {
      CHECK(Influence(maj, l, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
      CHECK(Influence(maj, l, 0.0) == doctest::Approx(InfluenceByEnumeration(maj, l, 0.0)));
    }
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-0.9, 0.9), v(-1.0, 1.0);
    for (int t = 0; t < 50; ++t) {
      CutFunction f{4, std::vector<double>(16)};
      for (double& x : f.values) x = v(rng);
      const double mu = u(rng);
      for (int l = 0; l < 4; ++l) {
        CHECK(std::abs(Influence(f, l, mu) - InfluenceByEnumeration(f, l, mu)) < 1e-12);
      }
    }
  }

  TEST_CASE("biased Fourier expansion reconstructs the function") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> v(-1.0, 1.0);
    CutFunction f{3, std::vector<double>(8)};
    for (double& x : f.values) x = v(rng);
    const double mu = 0.35, sigma = std::sqrt(1 - mu * mu);
    const auto c = BiasedFourier(f, mu);
    for (std::uint32_t x = 0; x < 8; ++x) {
      double sum = 0.0;
      for (std::uint32_t s = 0; s < 8; ++s) {
        double chi = 1.0;
        for (int l = 0; l < 3; ++l) {
          if (s & (1U << (2 - l))) chi *= (Coordinate(x, 3, l) - mu) / sigma;
        }
        sum += c[s] * chi;
      }
      CHECK(sum == doctest::Approx(f.values[x]).epsilon(1e-12));
    }
  }

  TEST_CASE("soundness enumeration") {
    const DictGadget g = BuildGadget(C4Mixture(), C4(), 0.1, 3);
    SoundnessOptions all;
    all.tau = 1.0;
    const SoundnessResult r = SoundnessEnumerate(g, all);
    CHECK(r.evaluated == 256);
    CHECK_FALSE(r.empty);
    double best_dictator = 0.0;
    for (int l = 0; l < 3; ++l) best_dictator = std::max(best_dictator, DictValue(g, Dictator(3, l)));
    CHECK(r.max_value >= best_dictator - 1e-12);
    CHECK(DictValue(g, r.witness) == doctest::Approx(r.max_value));

    SoundnessOptions none;
    none.tau = 0.0;
    CHECK(SoundnessEnumerate(g, none).empty);

    const DictGadget g2 = BuildGadget(C4Mixture(), C4(), 0.1, 2);
    SoundnessOptions grid;
    grid.tau = 0.0;
    grid.mode = SoundnessMode::kGrid;
    const SoundnessResult z = SoundnessEnumerate(g2, grid);
    CHECK_FALSE(z.empty);
    CHECK(z.max_value == doctest::Approx(0.5).epsilon(1e-12));
    for (double x : z.witness.values) CHECK(x == 0.0);

    grid.tau = 1.0;
    CHECK_THROWS_AS(SoundnessEnumerate(g, grid), Error);  // grid mode needs R <= 2
    SoundnessOptions big;
    CHECK_THROWS_AS(SoundnessEnumerate(BuildGadget(C4Mixture(), C4(), 0.1, 5), big), Error);
  }

  TEST_CASE("gadget size cap") {
    try {
      BuildGadget(C4Mixture(), C4(), 0.1, 13);
      FAIL("expected a capacity error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kCapacity);
      CHECK(std::string(e.what()).find("MiB") != std::string::npos);
    }
  }

  TEST_CASE("Round_F with the zero function flips fair coins") {
    const BiasProfile p = BiasDecompose(C4Mixture());
    const auto probs = RoundFProbabilities(p, Constant(2, 0.0), 0.1, 9);
    for (double x : probs) CHECK(x == 0.0);
    int plus = 0;
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
      const auto a = RoundWithFunction(p, C4(), Constant(2, 0.0), 0.1, static_cast<std::uint64_t>(t));
      plus += a.labels[0] > 0;
    }
    CHECK(std::abs(plus / static_cast<double>(trials) - 0.5) <= 4 * std::sqrt(0.25 / trials));
  }

  TEST_CASE("Round_F probabilities stay in range and near the bias for short vectors") {
    BiasProfile p;
    p.bias = {0.3, -0.5};
    p.w = Eigen::MatrixXd(2, 2);
    p.w << 1e-3, 0.0, 0.0, 2e-3;
    p.direction = Eigen::MatrixXd(2, 2);
    p.direction << 1.0, 0.0, 0.0, 1.0;
    p.degenerate = {false, false};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto q = RoundFProbabilities(p, Dictator(1, 0), 0.0, seed);
      CHECK(std::abs(q[0] - 0.3) < 6e-3);
      CHECK(std::abs(q[1] + 0.5) < 1.2e-2);
    }
  }

  TEST_CASE("Round_F with a single dictator keeps unbiased marginals") {
    // Chi-square on the label counts of every vertex against the bias-
    // preserving rounding over the same number of seeds.
    const BiasProfile p = BiasDecompose(C4Mixture());
    const int trials = 100000;
    std::vector<double> a(4, 0.0), b(4, 0.0);
    for (int t = 0; t < trials; ++t) {
      const auto ya = RoundWithFunction(p, C4(), Dictator(1, 0), 0.0, SubSeed(5, t)).labels;
      const auto yb = RoundLabels(p, SubSeed(6, t));
      for (int i = 0; i < 4; ++i) {
        a[i] += ya[i] > 0;
        b[i] += yb[i] > 0;
      }
    }
    for (int i = 0; i < 4; ++i) {
      // 2x2 contingency table, one degree of freedom; 10.83 is the 0.1% point.
      const double n = 2.0 * trials, col1 = a[i] + b[i], col0 = n - col1;
      double chi2 = 0.0;
      for (double obs_plus : {a[i], b[i]}) {
        const double e1 = trials * col1 / n, e0 = trials * col0 / n;
        chi2 += (obs_plus - e1) * (obs_plus - e1) / e1;
        chi2 += ((trials - obs_plus) - e0) * ((trials - obs_plus) - e0) / e0;
      }
      CHECK(chi2 < 10.83);
    }
  }

  TEST_CASE("Round_F covariance vanishes for orthogonal vectors") {
    BiasProfile p;
    p.bias = {0.2, -0.1};
    p.w = Eigen::MatrixXd::Zero(2, 2);
    p.w(0, 0) = std::sqrt(1 - 0.04);
    p.w(1, 1) = std::sqrt(1 - 0.01);
    p.direction = Eigen::MatrixXd::Identity(2, 2);
    p.degenerate = {false, false};
    const CutFunction f = BooleanFunction(2, 0b0110);
    const int trials = 40000;
    double s0 = 0, s1 = 0, s01 = 0, q0 = 0, q1 = 0;
    for (int t = 0; t < trials; ++t) {
      const auto q = RoundFProbabilities(p, f, 0.1, SubSeed(8, t));
      s0 += q[0];
      s1 += q[1];
      s01 += q[0] * q[1];
      q0 += q[0] * q[0];
      q1 += q[1] * q[1];
    }
    const double cov = s01 / trials - (s0 / trials) * (s1 / trials);
    const double sd = std::sqrt((q0 / trials) * (q1 / trials) / trials);
    CHECK(std::abs(cov) <= 5 * sd);
  }

  TEST_CASE("Round_F is continuous in the vectors") {
    // E[(p' - p*)²] against the perturbation size, same Gaussian samples.
    std::mt19937_64 rng(11);
    BiasProfile base;
    base.bias = {0.1};
    base.w = Eigen::MatrixXd(1, 3);
    base.w << 0.6, 0.5, 0.0;
    base.w.row(0) *= std::sqrt(1 - 0.01) / base.w.row(0).norm();
    base.direction = base.w / base.w.norm();
    base.degenerate = {false};
    const CutFunction f = Majority3();
    double previous = 1e9;
    for (double delta : {0.4, 0.2, 0.1, 0.05}) {
      BiasProfile moved = base;
      Eigen::RowVector3d turn(0.0, 0.0, 1.0);
      moved.w.row(0) = (base.w.row(0) + delta * turn).normalized() * base.w.row(0).norm();
      moved.direction = moved.w / moved.w.norm();
      const double dist2 = (moved.w.row(0) - base.w.row(0)).squaredNorm();
      double msq = 0.0;
      const int trials = 4000;
      for (int t = 0; t < trials; ++t) {
        const auto a = RoundFProbabilities(base, f, 0.1, SubSeed(12, t));
        const auto b = RoundFProbabilities(moved, f, 0.1, SubSeed(12, t));
        msq += (a[0] - b[0]) * (a[0] - b[0]);
      }
      msq /= trials;
      MESSAGE("delta " << delta << ": E[(p'-p)^2] = " << msq << ", ratio " << msq / dist2);
      CHECK(msq < previous);
      previous = msq;
    }
  }

  TEST_CASE("Round_F balance tightens on independent solutions") {
    const int n = 10, trials = 3000;
    const CspInstance g = Generate(Family::kCycle, n, 0);
    auto spread = [&](bool independent) {
      BiasProfile p;
      p.bias.assign(n, 0.0);
      p.w = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i < n; ++i) p.w(i, independent ? i : 0) = 1.0;
      p.direction = p.w;
      p.degenerate.assign(n, false);
      double sum2 = 0.0;
      for (int t = 0; t < trials; ++t) {
        const double b = RoundWithFunction(p, g, Majority3(), 0.1, SubSeed(13, t)).balance;
        sum2 += b * b;
      }
      return sum2 / trials;
    };
    CHECK(spread(true) < 0.5 * spread(false));
  }
}
