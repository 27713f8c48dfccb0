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


// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Inputs come from the bundled data directory.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "gcsp/bench.hpp"
#include "gcsp/dictator.hpp"
#include "gcsp/error.hpp"
#include "gcsp/gaussian.hpp"
#include "gcsp/independence.hpp"
#include "gcsp/landscape.hpp"
#include "gcsp/lasserre.hpp"
#include "gcsp/oracle.hpp"
#include "gcsp/rounding.hpp"
#include "gcsp/sdp_solver.hpp"
#include "gcsp/serialize.hpp"

#ifndef GCSP_DATA_DIR
#error "GCSP_DATA_DIR must point at the bundled data directory"
#endif

namespace {

using namespace gcsp;
using Clock = std::chrono::steady_clock;

double Since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

template <typename... Args>
void Note(Outcome& o, const char* fmt, Args... args) {
  char buf[512];
  if constexpr (sizeof...(Args) == 0) {
    std::snprintf(buf, sizeof buf, "%s", fmt);
  } else {
    std::snprintf(buf, sizeof buf, fmt, args...);
  }
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += buf;
}

void Require(Outcome& o, bool ok, const char* fmt, auto... args) {
  if (!ok) {
    o.pass = false;
    Note(o, fmt, args...);
  }
}

std::string DataPath(const std::string& name) { return std::string(GCSP_DATA_DIR) + "/" + name; }

// Φ(x) in long double, independent of the library's normal CDF.
long double PhiLong(long double x) { return 0.5L * std::erfc(-x / std::sqrt(2.0L)); }

// Φ⁻¹(p) by bisection on PhiLong. Above 1/2 it solves Φ(-x) = 1 - p, which
// is exact in double; near 1 the long double Φ itself cannot resolve x.
double InverseNormalByBisection(double p) {
  if (p > 0.5) return -InverseNormalByBisection(1.0 - p);
  long double lo = -40.0L, hi = 40.0L;
  for (int it = 0; it < 200; ++it) {
    const long double mid = 0.5L * (lo + hi);
    (PhiLong(mid) < static_cast<long double>(p) ? lo : hi) = mid;
  }
  return static_cast<double>(0.5L * (lo + hi));
}

// GW constant: min over ρ of (arccos ρ / π) / ((1 - ρ)/2), golden section.
double GwConstant() {
  auto f = [](double r) { return (std::acos(r) / std::numbers::pi) / ((1.0 - r) / 2.0); };
  double a = -1.0, b = 0.0;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (f(c) < f(d)) b = d; else a = c;
  }
  return f(0.5 * (a + b));
}

// Cached bench run shared by criteria 5 and 8.
const BenchResult& Bench() {
  static const BenchResult result = [] {
    std::ifstream in(DataPath("bench_suite.json"));
    return RunBench(Json::parse(in), GCSP_DATA_DIR);
  }();
  return result;
}

Outcome Criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  const RatioCertificate c = RatioSearch(ParsePayoffKind("cut"), RatioSearchOptions{});
  const double secs = Since(t0);
  Note(o, "min ratio %.6f at (%.4f, %.4f, %.4f), grid %d^3, %.1f s", c.minimum, c.argmin.mu1,
       c.argmin.mu2, c.argmin.rho, c.resolution, secs);
  Require(o, c.minimum >= 0.84 && c.minimum <= 0.87, "minimum outside [0.84, 0.87]");
  Require(o, secs <= 300.0, "over 5 minutes");
  return o;
}

Outcome Criterion2() {
  Outcome o;
  const auto t0 = Clock::now();
  const RatioCertificate c = RatioSearch(ParsePayoffKind("2sat"), RatioSearchOptions{});
  const double secs = Since(t0);
  Note(o, "min ratio %.6f, grid %d^3, %.1f s", c.minimum, c.resolution, secs);
  Require(o, c.minimum >= 0.91, "minimum below 0.91");
  Require(o, secs <= 300.0, "over 5 minutes");
  return o;
}

Outcome Criterion3() {
  Outcome o;
  const auto t0 = Clock::now();
  const SqrtEpsCurve c = SqrtEpsCurveOf({0.0025, 0.01, 0.04, 0.09});
  const double secs = Since(t0);
  for (const auto& p : c.points) Note(o, "eps %.4f -> %.6f", p.epsilon, p.worst_separation);
  Note(o, "beta %.4f, C %.4f, %.1f s", c.exponent, c.coefficient, secs);
  Require(o, c.exponent >= 0.4 && c.exponent <= 0.6, "exponent outside [0.4, 0.6]");
  Require(o, secs <= 120.0, "over 2 minutes");
  return o;
}

Outcome Criterion4() {
  Outcome o;
  RatioSearchOptions slice;
  slice.mu1 = {0.0, 0.0};
  slice.mu2 = {0.0, 0.0};
  const RatioCertificate c = RatioSearch(ParsePayoffKind("cut"), slice);
  const double oracle = GwConstant();
  Note(o, "slice minimum %.8f, 1-D oracle %.8f", c.minimum, oracle);
  Require(o, std::abs(c.minimum - 0.8785672) <= 1e-4, "slice off 0.8785672 by more than 1e-4");
  Require(o, std::abs(oracle - 0.8785672) <= 1e-4, "oracle off 0.8785672 by more than 1e-4");
  return o;
}

Outcome Criterion5() {
  Outcome o;
  const BenchResult& b = Bench();
  double worst = 1e9;
  std::size_t checked = 0;
  const std::string kind(ProblemKindName(ProblemKind::kMaxCutBisection));
  for (const auto& row : b.rows) {
    if (row.kind != kind) continue;
    ++checked;
    worst = std::min(worst, row.ratio);
    Require(o, row.ratio >= 0.84, "%s ratio %.4f", row.id.c_str(), row.ratio);
  }
  Note(o, "%zu instances, %zu max-bisection rows, worst ratio %.4f, %.1f s", b.rows.size(), checked,
       worst, b.seconds);
  Require(o, checked > 0, "no max-bisection rows");
  Require(o, b.rows.size() == 12, "suite has %zu instances", b.rows.size());
  Require(o, b.seconds <= 900.0, "over 15 minutes");
  return o;
}

Outcome Criterion6() {
  Outcome o;
  const int n = 12, edges = 36;
  double fitted_c = 0.0;  // smallest c with value >= 1 - c√ε on every run
  for (double eps : {0.01, 0.05, 0.1}) {
    double worst = 1.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      GenerateParams gp;
      gp.planted_epsilon = eps;
      gp.planted_edges = edges;
      const CspInstance g = Generate(Family::kPlanted, n, seed, gp);
      PipelineConfig pc;
      pc.seed = 1000 + seed;
      const PipelineResult r = Pipeline(g, pc);
      worst = std::min(worst, r.best.value);
      fitted_c = std::max(fitted_c, (1.0 - r.best.value) / std::sqrt(eps));
      Require(o, r.best.value >= 1.0 - 3.0 * std::sqrt(eps), "eps %.2f seed %llu value %.4f",
              eps, static_cast<unsigned long long>(seed), r.best.value);
    }
    Note(o, "eps %.2f: worst %.4f vs bound %.4f", eps, worst, 1.0 - 3.0 * std::sqrt(eps));
  }
  Note(o, "fitted c %.4f", fitted_c);
  return o;
}

double MarginalEntropy(const MomentSolution& s, int j) {
  const int v[] = {j};
  return Entropy(LocalDistributionOf(s, v).probabilities);
}

Outcome Criterion7() {
  Outcome o;
  std::mt19937_64 rng(7);
  const CspInstance g = Generate(Family::kCycle, 6, 0);
  const auto& w = g.vertex_weights();
  const int n = g.n();
  double worst = 0.0;
  for (int fixture = 0; fixture < 100; ++fixture) {
    // Random mixture of balanced assignments at level 3.
    std::vector<std::vector<int>> support;
    std::vector<double> probs;
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    double total = 0.0;
    const int k = 2 + fixture % 4;
    for (int s = 0; s < k; ++s) {
      std::vector<int> x(n, 0);
      std::fill(x.begin() + n / 2, x.end(), 1);
      std::shuffle(x.begin(), x.end(), rng);
      support.push_back(x);
      probs.push_back(unit(rng));
      total += probs.back();
    }
    for (double& p : probs) p /= total;
    const MomentSolution s = ExactMixtureMoments(g, 3, support, probs);
    for (int i = 0; i < n; ++i) {
      const int vi[] = {i};
      const auto pi = LocalDistributionOf(s, vi).probabilities;
      double h = 0.0, h_cond = 0.0, mi = 0.0;
      for (int j = 0; j < n; ++j) {
        h += w[j] * MarginalEntropy(s, j);
        if (i == j) {
          mi += w[j] * Entropy(pi);
        } else {
          const int pair[] = {std::min(i, j), std::max(i, j)};
          mi += w[j] * MutualInformation(LocalDistributionOf(s, pair).probabilities);
        }
      }
      for (int v = 0; v < 2; ++v) {
        if (pi[v] < kProbabilityFloor) continue;
        const MomentSolution c = Condition(s, i, v);
        for (int j = 0; j < n; ++j) h_cond += pi[v] * w[j] * MarginalEntropy(c, j);
      }
      worst = std::max(worst, std::abs((h - h_cond) - mi));
    }
  }
  Note(o, "100 fixtures, worst chain-rule gap %.3g", worst);
  Require(o, worst <= 1e-9, "chain rule off by more than 1e-9");

  const CspInstance c4 = Generate(Family::kCycle, 4, 0);
  const MomentSolution mix = ExactMixtureMoments(c4, 3, {{0, 1, 0, 1}, {1, 0, 1, 0}}, {0.5, 0.5});
  const double before = AlphaIndependence(mix, c4).average_mi;
  const double after = AlphaIndependence(Condition(mix, 0, 0, c4), c4).average_mi;
  Note(o, "two-bisection mixture MI %.12f -> %.3g", before, after);
  Require(o, std::abs(before - 1.0) <= 1e-9, "mixture MI is not 1 bit");
  Require(o, after <= 1e-9, "conditioned MI above 1e-9");
  return o;
}

Outcome Criterion8() {
  Outcome o;
  const BenchResult& b = Bench();
  double eig = 0.0, cons = 0.0, card = 0.0, prop = 0.0;
  for (const auto& row : b.rows) {
    eig = std::min(eig, row.feasibility.min_eigenvalue);
    cons = std::max(cons, row.feasibility.consistency_violation);
    card = std::max(card, row.feasibility.cardinality_violation);
    prop = std::max(prop, row.edge_identity_error);
    Require(o, row.feasibility.min_eigenvalue >= -1e-5, "%s min eigenvalue %.3g", row.id.c_str(),
            row.feasibility.min_eigenvalue);
    Require(o, row.feasibility.consistency_violation <= 1e-5, "%s consistency %.3g",
            row.id.c_str(), row.feasibility.consistency_violation);
    Require(o, row.feasibility.cardinality_violation <= 1e-5, "%s cardinality %.3g",
            row.id.c_str(), row.feasibility.cardinality_violation);
    Require(o, row.edge_identity_error <= 1e-6, "%s edge identity %.3g", row.id.c_str(), row.edge_identity_error);
  }
  Note(o, "min eigenvalue %.3g, consistency %.3g, cardinality %.3g, edge identity %.3g", eig, cons,
       card, prop);
  return o;
}

Outcome Criterion9() {
  Outcome o;
  std::mt19937_64 rng(9);
  const int trials = 100000;
  const CspInstance g = Generate(Family::kCycle, 8, 0);
  int checked = 0, outside = 0;
  double worst_z = 0.0;
  for (int profile = 0; profile < 20; ++profile) {
    // Profiles from random balanced mixtures, so biases and directions come
    // from genuine moment matrices.
    std::vector<std::vector<int>> support;
    std::vector<double> probs;
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    double total = 0.0;
    for (int s = 0; s < 2 + profile % 5; ++s) {
      std::vector<int> x(8, 0);
      std::fill(x.begin() + 4, x.end(), 1);
      std::shuffle(x.begin(), x.end(), rng);
      support.push_back(x);
      probs.push_back(unit(rng));
      total += probs.back();
    }
    for (double& p : probs) p /= total;
    const BiasProfile p = BiasDecompose(ExactMixtureMoments(g, 2, support, probs));
    std::vector<double> plus(8, 0.0);
    for (int t = 0; t < trials; ++t) {
      const auto y = RoundLabels(p, SubSeed(90000 + profile, static_cast<std::uint64_t>(t)));
      for (int i = 0; i < 8; ++i) plus[i] += y[i] > 0;
    }
    for (int i = 0; i < 8; ++i) {
      const double q = (1.0 + p.bias[i]) / 2.0;
      const double sigma = std::sqrt(q * (1.0 - q) / trials);
      if (sigma == 0.0) {
        Require(o, plus[i] / trials == q, "profile %d vertex %d deterministic mismatch", profile, i);
        continue;
      }
      const double z = std::abs(plus[i] / trials - q) / sigma;
      worst_z = std::max(worst_z, z);
      ++checked;
      if (z > 3.0) ++outside;
    }
  }
  Note(o, "%d vertex marginals, worst |z| %.2f, %d outside 3 sigma", checked, worst_z, outside);
  Require(o, outside == 0, "marginals outside 3 sigma");

  int violations = 0;
  std::gamma_distribution<double> gamma(0.5, 1.0);
  for (int t = 0; t < 10000; ++t) {
    std::vector<double> joint(4);
    double s = 0.0;
    for (double& x : joint) s += (x = gamma(rng) + 1e-300);
    for (double& x : joint) x /= s;
    const double i_nats = MutualInformation(joint) * std::log(2.0);
    const double px[2] = {joint[0] + joint[1], joint[2] + joint[3]};
    const double py[2] = {joint[0] + joint[2], joint[1] + joint[3]};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        if (std::abs(joint[2 * a + b] - px[a] * py[b]) > std::sqrt(2.0 * i_nats) + 1e-15) {
          ++violations;
        }
      }
    }
  }
  Note(o, "statistical-distance bound: %d violations over 10^4 joints", violations);
  Require(o, violations == 0, "statistical-distance bound violated");
  return o;
}

// Admissible balanced functions may not beat the integral optimum by more
// than rounding noise; the observed slack of every triple is printed.
constexpr double kSoundnessSlack = 1e-9;

Outcome Criterion10() {
  Outcome o;
  const char* names[] = {"c4", "k4", "c6"};
  SolverConfig tight;
  tight.primal_tolerance = 1e-10;
  tight.dual_tolerance = 1e-10;
  tight.max_iterations = 200000;
  double slowest = 0.0;
  for (const char* name : names) {
    const CspInstance g = LoadEdgeListFile(DataPath(std::string("suite/") + name + ".edges"));
    auto [solution, report] = Solve(BuildRelaxation(g, 2, false), g, tight);
    const double opt = BruteForce(g, true).optimum;
    for (double eps : {0.0, 0.1}) {
      const DictGadget gadget = BuildGadget(solution, g, eps, 3);
      const CompletenessReport c = Completeness(gadget, 1e-9, 2.0 * eps + 1e-6);
      Require(o, c.max_abs_balance <= 1e-9, "%s eps %.1f balance %.3g", name, eps,
              c.max_abs_balance);
      Require(o, c.min_value >= gadget.source_value - 2.0 * eps - 1e-6,
              "%s eps %.1f dictator value %.6f below %.6f", name, eps, c.min_value,
              gadget.source_value - 2.0 * eps - 1e-6);
      Note(o, "%s eps %.1f: val %.6f, min dictator %.6f, |balance| %.2g", name, eps,
           gadget.source_value, c.min_value, c.max_abs_balance);
      for (double tau : {0.1, 0.25, 0.5, 1.0}) {
        SoundnessOptions so;
        so.tau = tau;
        const auto t0 = Clock::now();
        const SoundnessResult s = SoundnessEnumerate(gadget, so);
        const double secs = Since(t0);
        slowest = std::max(slowest, secs);
        Require(o, s.evaluated == 256, "%s enumerated %llu functions", name,
                static_cast<unsigned long long>(s.evaluated));
        Require(o, secs <= 60.0, "%s soundness took %.1f s", name, secs);
        if (s.empty) {
          Note(o, "  (tau %.2f, none admissible, opt %.6f)", tau, opt);
        } else {
          Note(o, "  (tau %.2f, max %.6f, opt %.6f, slack %.6f)", tau, s.max_value, opt,
               s.max_value - opt);
          Require(o, s.max_value <= opt + kSoundnessSlack, "%s tau %.2f max %.6f above opt %.6f + %.0e",
                  name, tau, s.max_value, opt, kSoundnessSlack);
        }
      }
    }
  }
  Note(o, "slowest soundness enumeration %.3f s", slowest);
  return o;
}

Outcome Criterion11() {
  Outcome o;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double rho = -0.98 + 0.04 * k;
    const double exact = 0.25 + std::asin(rho) / (2.0 * std::numbers::pi);
    worst = std::max(worst, std::abs(BvnCdf(0.0, 0.0, rho) - exact));
  }
  Note(o, "arcsine law: worst error %.3g over 50 correlations", worst);
  Require(o, worst <= 1e-8, "arcsine law off by more than 1e-8");

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t(-2.0, 2.0), r(-0.99, 0.99);
  double worst_z = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double t1 = t(rng), t2 = t(rng), rho = r(rng);
    const MonteCarloEstimate mc = McBvn(t1, t2, rho, 1000000, SubSeed(11, k));
    // Binomial σ of the exact probability; the plug-in σ vanishes when no
    // sample lands in a tiny orthant.
    const double p = BvnCdf(t1, t2, rho);
    const double sigma = std::max(std::sqrt(p * (1.0 - p) / 1e6), 1e-6);
    const double z = std::abs(p - mc.estimate) / sigma;
    worst_z = std::max(worst_z, z);
  }
  Note(o, "Monte Carlo: worst |z| %.2f over 20 configs", worst_z);
  Require(o, worst_z <= 4.0, "Monte Carlo disagreement beyond 4 sigma");

  double worst_inv = 0.0;
  for (int k = 0; k <= 400; ++k) {
    const double p = std::pow(10.0, -12.0 + 12.0 * k / 400.0) * 0.5;  // (5e-13, 0.5]
    for (double q : {p, 1.0 - p}) {
      worst_inv = std::max(worst_inv, std::abs(InverseNormalCdf(q) - InverseNormalByBisection(q)));
    }
  }
  Note(o, "inverse normal: worst error %.3g over 802 points", worst_inv);
  Require(o, worst_inv <= 1e-9, "inverse normal off by more than 1e-9");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {
      Criterion1, Criterion2, Criterion3, Criterion4,  Criterion5, Criterion6,
      Criterion7, Criterion8, Criterion9, Criterion10, Criterion11};
  // Optional arguments: criterion numbers to run (default: all).
  std::vector<bool> run(criteria.size(), argc < 2);
  for (int a = 1; a < argc; ++a) {
    const int k = std::atoi(argv[a]);
    if (k >= 1 && k <= static_cast<int>(criteria.size())) run[k - 1] = true;
  }
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (!run[k]) continue;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("ACCEPTANCE %zu %s (%.1f s): %s\n", k + 1, o.pass ? "PASS" : "FAIL", Since(t0),
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
