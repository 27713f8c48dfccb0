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

#include "gcsp/landscape.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gcsp/error.hpp"
#include "gcsp/gaussian.hpp"
#include "gcsp/rounding.hpp"

namespace gcsp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kQuadratureError = 1e-12;

std::vector<double> Axis(const AxisRange& range, int resolution) {
  if (!(range.lo <= range.hi) || range.lo < -1.0 || range.hi > 1.0) {
    throw InputError("axis range must lie in [-1, 1]");
  }
  if (range.lo == range.hi) return {range.lo};
  std::vector<double> xs(resolution);
  for (int i = 0; i < resolution; ++i) {
    xs[i] = range.lo + (range.hi - range.lo) * i / (resolution - 1);
  }
  return xs;
}

double Spacing(const std::vector<double>& axis) {
  return axis.size() > 1 ? axis[1] - axis[0] : 0.0;
}

double Clamp(double x, const AxisRange& r) { return std::clamp(x, r.lo, r.hi); }

struct Evaluated {
  bool ok = false;
  GridCell cell;
};

Evaluated Evaluate(const PayoffKind& kind, const EdgeConfig& config, double min_sdp) {
  Evaluated e;
  e.cell.config = config;
  if (!IsValid(config)) return e;
  e.cell.sdp = EdgeSdpValue(kind, config);
  if (!(e.cell.sdp > min_sdp)) return e;
  e.cell.separation = SeparationProb(config);
  e.cell.rounded = kind.type == PayoffKind::Type::kCut ? e.cell.separation
                                                       : EdgeRoundedValue(kind, config);
  e.cell.ratio = e.cell.rounded / e.cell.sdp;
  e.ok = true;
  return e;
}

// Adaptive Gauss-Kronrod with an absolute error target; boost's own driver
// targets relative error, which never converges on integrals that vanish.
template <class F>
double Integrate(const F& f, double a, double b, double tolerance, int depth) {
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &error);
  if (error <= tolerance || depth == 0) return value;
  const double mid = 0.5 * (a + b);
  return Integrate(f, a, mid, 0.5 * tolerance, depth - 1) +
         Integrate(f, mid, b, 0.5 * tolerance, depth - 1);
}

}  // namespace

double BvnCdf(double t1, double t2, double rho) {
  if (std::isnan(t1) || std::isnan(t2) || std::isnan(rho)) throw InputError("BvnCdf: NaN input");
  if (rho < -1.0 || rho > 1.0) throw InputError("BvnCdf: correlation outside [-1, 1]");
  if (t1 == -kInf || t2 == -kInf) return 0.0;
  if (t1 == kInf) return NormalCdf(t2);
  if (t2 == kInf) return NormalCdf(t1);
  if (rho == 1.0) return NormalCdf(std::min(t1, t2));
  if (rho == -1.0) return std::max(0.0, NormalCdf(t1) - NormalCdf(-t2));
  const double a = t1 * t1 + t2 * t2;
  const double b = 2.0 * t1 * t2;
  auto integrand = [a, b](double theta) {
    const double c = std::cos(theta);
    if (c <= 0.0) return 0.0;
    return std::exp(-(a - b * std::sin(theta)) / (2.0 * c * c));
  };
  const double integral = Integrate(integrand, 0.0, std::asin(rho), 1e-12, 20);
  const double p = NormalCdf(t1) * NormalCdf(t2) + integral / (2.0 * kPi);
  return std::clamp(p, 0.0, std::min(NormalCdf(t1), NormalCdf(t2)));
}

double PairMoment(const EdgeConfig& c) {
  const double s1 = std::sqrt(std::max(0.0, 1.0 - c.mu1 * c.mu1));
  const double s2 = std::sqrt(std::max(0.0, 1.0 - c.mu2 * c.mu2));
  return c.mu1 * c.mu2 + c.rho * s1 * s2;
}

bool IsValid(const EdgeConfig& c, double tolerance) {
  if (std::abs(c.mu1) > 1.0 || std::abs(c.mu2) > 1.0 || std::abs(c.rho) > 1.0) return false;
  const double m = PairMoment(c);
  for (int a : {-1, 1}) {
    for (int b : {-1, 1}) {
      if ((1.0 + a * c.mu1 + b * c.mu2 + a * b * m) / 4.0 < -tolerance) return false;
    }
  }
  return true;
}

double SeparationProb(const EdgeConfig& c) {
  const double t1 = Threshold(c.mu1);
  const double t2 = Threshold(c.mu2);
  const double p = NormalCdf(t1) + NormalCdf(t2) - 2.0 * BvnCdf(t1, t2, c.rho);
  return std::clamp(p, 0.0, 1.0);
}

PayoffKind ParsePayoffKind(std::string_view name) {
  if (name == "cut") return PayoffKind::Cut();
  if (name == "2sat" || name == "clause") return PayoffKind::Clause(1, 1);
  throw InputError("unknown payoff kind '" + std::string(name) + "' (expected cut or 2sat)");
}

std::string PayoffKindName(const PayoffKind& kind) {
  if (kind.type == PayoffKind::Type::kCut) return "cut";
  return std::string("2sat(") + (kind.sign1 > 0 ? "+" : "-") + "," + (kind.sign2 > 0 ? "+" : "-") +
         ")";
}

double EdgeSdpValue(const PayoffKind& kind, const EdgeConfig& c) {
  const double m = PairMoment(c);
  if (kind.type == PayoffKind::Type::kCut) return (1.0 - m) / 2.0;
  // The clause fails only at y1 = -s1, y2 = -s2.
  const int a = -kind.sign1;
  const int b = -kind.sign2;
  return 1.0 - (1.0 + a * c.mu1 + b * c.mu2 + a * b * m) / 4.0;
}

double EdgeRoundedValue(const PayoffKind& kind, const EdgeConfig& c) {
  if (kind.type == PayoffKind::Type::kCut) return SeparationProb(c);
  const double t1 = Threshold(c.mu1);
  const double t2 = Threshold(c.mu2);
  const double f1 = NormalCdf(t1);
  const double f2 = NormalCdf(t2);
  const double both_plus = BvnCdf(t1, t2, c.rho);
  // P(y1 = a, y2 = b)
  auto joint = [&](int a, int b) {
    if (a > 0 && b > 0) return both_plus;
    if (a > 0) return f1 - both_plus;
    if (b > 0) return f2 - both_plus;
    return 1.0 - f1 - f2 + both_plus;
  };
  return std::clamp(1.0 - joint(-kind.sign1, -kind.sign2), 0.0, 1.0);
}

RatioCertificate RatioSearch(const PayoffKind& requested, const RatioSearchOptions& options,
                             const std::function<void(const GridCell&)>& on_cell) {
  if (options.resolution < 50) throw InputError("grid resolution must be >= 50 points per axis");
  if (options.refinement_rounds < 0 || options.refine_best < 1) {
    throw InputError("refinement settings must be non-negative");
  }
  const PayoffKind kind = requested.type == PayoffKind::Type::kCut ? PayoffKind::Cut()
                                                                  : PayoffKind::Clause(1, 1);
  const std::vector<double> x1 = Axis(options.mu1, options.resolution);
  const std::vector<double> x2 = Axis(options.mu2, options.resolution);
  const std::vector<double> x3 = Axis(options.rho, options.resolution);
  const std::array<double, 3> h = {Spacing(x1), Spacing(x2), Spacing(x3)};
  const std::size_t n1 = x1.size(), n2 = x2.size(), n3 = x3.size();
  auto flat = [&](std::size_t i, std::size_t j, std::size_t k) { return (i * n2 + j) * n3 + k; };

  RatioCertificate cert;
  cert.payoff = PayoffKindName(kind);
  cert.resolution = options.resolution;
  std::vector<double> ratio(n1 * n2 * n3, kNaN);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      for (std::size_t k = 0; k < n3; ++k) {
        ++cert.cells;
        const Evaluated e = Evaluate(kind, {x1[i], x2[j], x3[k]}, options.min_sdp_value);
        if (!e.ok) continue;
        ++cert.valid_cells;
        ratio[flat(i, j, k)] = e.cell.ratio;
        if (on_cell) on_cell(e.cell);
      }
    }
  }
  if (cert.valid_cells == 0) throw InputError("no valid configuration in the search domain");

  // Best cells, lowest ratio first; ties by index.
  std::vector<std::size_t> order;
  for (std::size_t f = 0; f < ratio.size(); ++f) {
    if (!std::isnan(ratio[f])) order.push_back(f);
  }
  const std::size_t keep = std::min<std::size_t>(options.refine_best, order.size());
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return ratio[a] < ratio[b] || (ratio[a] == ratio[b] && a < b);
                    });
  order.resize(keep);
  auto unflat = [&](std::size_t f) {
    return std::array<std::size_t, 3>{f / (n2 * n3), (f / n3) % n2, f % n3};
  };
  cert.grid_minimum = ratio[order[0]];

  // Finite-difference Lipschitz estimates.
  auto diff_along = [&](std::size_t i, std::size_t j, std::size_t k, double& out) {
    const double r = ratio[flat(i, j, k)];
    if (std::isnan(r)) return;
    if (i + 1 < n1 && !std::isnan(ratio[flat(i + 1, j, k)])) {
      out = std::max(out, std::abs(ratio[flat(i + 1, j, k)] - r) / h[0]);
    }
    if (j + 1 < n2 && !std::isnan(ratio[flat(i, j + 1, k)])) {
      out = std::max(out, std::abs(ratio[flat(i, j + 1, k)] - r) / h[1]);
    }
    if (k + 1 < n3 && !std::isnan(ratio[flat(i, j, k + 1)])) {
      out = std::max(out, std::abs(ratio[flat(i, j, k + 1)] - r) / h[2]);
    }
  };
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      for (std::size_t k = 0; k < n3; ++k) diff_along(i, j, k, cert.lipschitz_global);
    }
  }
  {
    const auto c = unflat(order[0]);
    auto lo = [](std::size_t v) { return v >= 2 ? v - 2 : 0; };
    for (std::size_t i = lo(c[0]); i < std::min(n1, c[0] + 2); ++i) {
      for (std::size_t j = lo(c[1]); j < std::min(n2, c[1] + 2); ++j) {
        for (std::size_t k = lo(c[2]); k < std::min(n3, c[2] + 2); ++k) {
          diff_along(i, j, k, cert.lipschitz);
        }
      }
    }
  }

  // Pattern search around each kept cell with a halving step.
  cert.minimum = cert.grid_minimum;
  {
    const auto c = unflat(order[0]);
    cert.argmin = {x1[c[0]], x2[c[1]], x3[c[2]]};
  }
  const std::array<AxisRange, 3> ranges = {options.mu1, options.mu2, options.rho};
  for (std::size_t s = 0; s < order.size(); ++s) {
    const auto c = unflat(order[s]);
    std::array<double, 3> p = {x1[c[0]], x2[c[1]], x3[c[2]]};
    double best = ratio[order[s]];
    std::array<double, 3> step = h;
    for (int round = 0; round < options.refinement_rounds; ++round) {
      std::array<double, 3> best_p = p;
      double best_r = best;
      for (int d = 0; d < 27; ++d) {
        const int delta[3] = {d / 9 - 1, (d / 3) % 3 - 1, d % 3 - 1};
        if (delta[0] == 0 && delta[1] == 0 && delta[2] == 0) continue;
        std::array<double, 3> q;
        for (int a = 0; a < 3; ++a) q[a] = Clamp(p[a] + delta[a] * step[a], ranges[a]);
        const Evaluated e = Evaluate(kind, {q[0], q[1], q[2]}, options.min_sdp_value);
        if (e.ok && e.cell.ratio < best_r) {
          best_r = e.cell.ratio;
          best_p = q;
        }
      }
      if (best_r < best) {
        best = best_r;
        p = best_p;
      } else {
        for (double& v : step) v *= 0.5;
      }
      cert.trace.push_back({static_cast<int>(s), round, {p[0], p[1], p[2]}, best,
                            std::max({step[0], step[1], step[2]})});
    }
    if (best < cert.minimum) {
      cert.minimum = best;
      cert.argmin = {p[0], p[1], p[2]};
    }
  }
  const double half_diagonal = 0.5 * std::sqrt(h[0] * h[0] + h[1] * h[1] + h[2] * h[2]);
  cert.error_bar = kQuadratureError + cert.lipschitz * half_diagonal;
  return cert;
}

SqrtEpsCurve SqrtEpsCurveOf(const std::vector<double>& epsilons, int resolution,
                            int refinement_rounds) {
  if (epsilons.size() < 2) throw InputError("need at least two epsilon values");
  if (resolution < 2 || refinement_rounds < 0) throw InputError("bad grid settings");
  const AxisRange full{-1.0, 1.0};
  const std::vector<double> axis = Axis(full, resolution);
  const double h0 = Spacing(axis);

  SqrtEpsCurve curve;
  for (double eps : epsilons) {
    if (!(eps > 0.0 && eps < 0.5)) throw InputError("epsilon must lie in (0, 1/2)");
    // Separation at the smallest admissible rho, or -1 if none.
    auto worst_at = [eps](double mu1, double mu2, EdgeConfig* config) {
      const double s = std::sqrt(std::max(0.0, 1.0 - mu1 * mu1)) *
                       std::sqrt(std::max(0.0, 1.0 - mu2 * mu2));
      double rho;
      if (s == 0.0) {
        if ((1.0 - mu1 * mu2) / 2.0 > eps) return -1.0;
        rho = 1.0;
      } else {
        rho = std::max(-1.0, (1.0 - 2.0 * eps - mu1 * mu2) / s);
        if (rho > 1.0) return -1.0;
      }
      const EdgeConfig c{mu1, mu2, rho};
      if (!IsValid(c) || (1.0 - PairMoment(c)) / 2.0 > eps + 1e-12) return -1.0;
      if (config) *config = c;
      return SeparationProb(c);
    };
    SqrtEpsPoint point{eps, -1.0, {}};
    double bu = 0.0, bv = 0.0;
    for (double u : axis) {
      for (double v : axis) {
        EdgeConfig c;
        const double sep = worst_at(u, v, &c);
        if (sep > point.worst_separation) {
          point.worst_separation = sep;
          point.argmax = c;
          bu = u;
          bv = v;
        }
      }
    }
    double step = h0;
    for (int round = 0; round < refinement_rounds; ++round) {
      bool moved = false;
      for (int d = 0; d < 9; ++d) {
        if (d == 4) continue;
        const double u = Clamp(bu + (d / 3 - 1) * step, full);
        const double v = Clamp(bv + (d % 3 - 1) * step, full);
        EdgeConfig c;
        const double sep = worst_at(u, v, &c);
        if (sep > point.worst_separation) {
          point.worst_separation = sep;
          point.argmax = c;
          bu = u;
          bv = v;
          moved = true;
        }
      }
      if (!moved) step *= 0.5;
    }
    curve.points.push_back(point);
  }
  // Least squares on log worst = log C + β log ε.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double k = static_cast<double>(curve.points.size());
  for (const auto& p : curve.points) {
    if (!(p.worst_separation > 0.0)) throw NumericalError("worst separation is zero; cannot fit");
    const double x = std::log(p.epsilon);
    const double y = std::log(p.worst_separation);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  curve.exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  curve.coefficient = std::exp((sy - curve.exponent * sx) / k);
  return curve;
}

}  // namespace gcsp
