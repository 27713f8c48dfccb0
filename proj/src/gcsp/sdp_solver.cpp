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

#include "gcsp/sdp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "gcsp/error.hpp"

namespace gcsp {
namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

// svec: upper triangle, column-major, off-diagonals scaled by sqrt(2) so the
// Euclidean product matches the Frobenius product.
inline int SvecPos(int i, int j) { return j * (j + 1) / 2 + i; }

Eigen::VectorXd Svec(const Eigen::MatrixXd& x) {
  const int m = static_cast<int>(x.rows());
  Eigen::VectorXd v(m * (m + 1) / 2);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < j; ++i) v(SvecPos(i, j)) = kSqrt2 * 0.5 * (x(i, j) + x(j, i));
    v(SvecPos(j, j)) = x(j, j);
  }
  return v;
}

Eigen::MatrixXd Smat(const Eigen::VectorXd& v, int m) {
  Eigen::MatrixXd x(m, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < j; ++i) x(i, j) = x(j, i) = v(SvecPos(i, j)) / kSqrt2;
    x(j, j) = v(SvecPos(j, j));
  }
  return x;
}

double SvecCoef(const MatrixEntry& e) { return e.row == e.col ? e.coef : e.coef / kSqrt2; }

// Projection onto {v : A v = b} with a ridge-regularized factorization of A·Aᵀ
// and iterative refinement, so redundant rows are tolerated.
class AffineProjector {
 public:
  AffineProjector(const ConicProgram& program, int svec_dim) {
    const int rows = static_cast<int>(program.constraints.size());
    std::vector<Eigen::Triplet<double>> trips;
    b_.resize(rows);
    for (int r = 0; r < rows; ++r) {
      const auto& c = program.constraints[r];
      b_(r) = c.rhs;
      for (const auto& e : c.terms) {
        if (e.row > e.col || e.col >= program.dim || e.row < 0) {
          throw InputError("constraint entry outside the upper triangle");
        }
        trips.emplace_back(r, SvecPos(e.row, e.col), SvecCoef(e));
      }
    }
    a_.resize(rows, svec_dim);
    a_.setFromTriplets(trips.begin(), trips.end());
    at_ = a_.transpose();
    Eigen::SparseMatrix<double> normal = a_ * at_;
    double diag_max = 0.0;
    for (int r = 0; r < rows; ++r) diag_max = std::max(diag_max, normal.coeff(r, r));
    ridge_ = 1e-12 * std::max(1.0, diag_max);
    Eigen::SparseMatrix<double> id(rows, rows);
    id.setIdentity();
    normal += ridge_ * id;
    solver_.compute(normal);
    if (solver_.info() != Eigen::Success) {
      throw NumericalError("factorization of the constraint normal equations failed");
    }
  }

  // Returns the projection; `multiplier` receives ν with v - proj = Aᵀν.
  Eigen::VectorXd Project(const Eigen::VectorXd& v, Eigen::VectorXd* multiplier) const {
    Eigen::VectorXd x = v;
    Eigen::VectorXd nu = Eigen::VectorXd::Zero(b_.size());
    for (int pass = 0; pass < 3; ++pass) {
      const Eigen::VectorXd r = a_ * x - b_;
      const Eigen::VectorXd y = solver_.solve(r);
      nu += y;
      x -= at_ * y;
      if (r.lpNorm<Eigen::Infinity>() < 1e-15) break;
    }
    if (multiplier) *multiplier = nu;
    return x;
  }

  const Eigen::VectorXd& b() const { return b_; }

 private:
  Eigen::SparseMatrix<double, Eigen::RowMajor> a_;
  Eigen::SparseMatrix<double> at_;
  Eigen::VectorXd b_;
  double ridge_ = 0.0;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver_;
};

std::string Diagnostics(const Eigen::MatrixXd& m) {
  std::ostringstream out;
  out << "dim " << m.rows() << ", finite " << (m.allFinite() ? "yes" : "no")
      << ", |M|_F " << m.norm() << ", asymmetry " << (m - m.transpose()).norm();
  return out.str();
}

}  // namespace

void ValidateSolverConfig(const SolverConfig& config) {
  if (config.max_iterations < 1) throw InputError("max_iterations must be >= 1");
  if (!(config.primal_tolerance > 0.0) || !(config.dual_tolerance > 0.0)) {
    throw InputError("solver tolerances must be positive");
  }
  if (!(config.over_relaxation >= 1.0 && config.over_relaxation < 2.0)) {
    throw InputError("over_relaxation must lie in [1, 2)");
  }
  if (config.step < 0.0) throw InputError("step must be non-negative");
  if (config.check_every < 1) throw InputError("check_every must be >= 1");
  if (config.polish_rounds < 0) throw InputError("polish_rounds must be >= 0");
}

std::string_view SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kMaxIterations: return "max_iter";
    case SolveStatus::kInfeasibleSuspected: return "infeasible-suspected";
  }
  return "?";
}

Eigen::MatrixXd ProjectPsd(const Eigen::MatrixXd& symmetric) {
  if (symmetric.rows() != symmetric.cols()) throw InputError("ProjectPsd needs a square matrix");
  if (!symmetric.allFinite()) {
    throw NumericalError("eigendecomposition failed: " + Diagnostics(symmetric));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetric);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition failed: " + Diagnostics(symmetric));
  }
  const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
  Eigen::MatrixXd out = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
  return 0.5 * (out + out.transpose());
}

std::pair<Eigen::MatrixXd, SolveReport> SolveProgram(const ConicProgram& program,
                                                     const SolverConfig& config) {
  ValidateSolverConfig(config);
  const int m = program.dim;
  if (m < 1) throw InputError("program has no rows");
  const int d = m * (m + 1) / 2;
  const AffineProjector affine(program, d);

  Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
  for (const auto& e : program.objective) c(SvecPos(e.row, e.col)) += SvecCoef(e);
  if (program.sense == Sense::kMinimize) c = -c;
  double step = config.step > 0.0 ? config.step : 1.0 / std::max(1.0, c.norm());
  const double relax = config.over_relaxation;
  const double b_norm = affine.b().norm();

  SolveReport report;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd x, y, nu;
  for (int it = 1; it <= config.max_iterations; ++it) {
    x = affine.Project(z + step * c, &nu);
    const Eigen::VectorXd v = 2.0 * x - z;
    y = Svec(ProjectPsd(Smat(v, m)));
    z += relax * (y - x);
    report.iterations = it;

    if (it % config.check_every == 0 || it == config.max_iterations) {
      const double pobj = c.dot(x);
      const double dobj = affine.b().dot(nu) / step;
      const double rp = (x - y).norm() / (1.0 + std::max({x.norm(), y.norm(), b_norm}));
      const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
      report.primal_residual = rp;
      report.dual_residual = gap;
      report.dual_objective = program.sense == Sense::kMinimize ? -dobj : dobj;
      report.residual_history.push_back(std::max(rp, gap));
      if (!std::isfinite(rp) || !std::isfinite(gap)) {
        throw NumericalError("solver diverged (non-finite residual)");
      }
      if (rp <= config.primal_tolerance && gap <= config.dual_tolerance) {
        report.status = SolveStatus::kOptimal;
        break;
      }
      // Residual balancing: rescale the step, keeping the implied dual
      // estimate (z - x) / step fixed.
      if (config.adaptive_step && it % (config.check_every * 10) == 0) {
        const double p_scaled = rp / config.primal_tolerance;
        const double d_scaled = gap / config.dual_tolerance;
        double factor = 1.0;
        if (p_scaled > 5.0 * d_scaled) factor = 0.5;
        if (d_scaled > 5.0 * p_scaled) factor = 2.0;
        if (factor != 1.0) {
          z = x + factor * (z - x);
          step *= factor;
        }
      }
    }
  }
  if (report.status != SolveStatus::kOptimal) {
    report.status = report.primal_residual > 1e-3 ? SolveStatus::kInfeasibleSuspected
                                                  : SolveStatus::kMaxIterations;
  }

  // Polish with alternating projections, which shrink the affine violation of
  // the cone iterate without moving far from the DR fixed point.
  double gap_norm = (x - y).norm();
  for (int round = 0; round < config.polish_rounds && gap_norm > 1e-13; ++round) {
    const Eigen::VectorXd xa = affine.Project(y, nullptr);
    const Eigen::VectorXd ya = Svec(ProjectPsd(Smat(xa, m)));
    const double next = (xa - ya).norm();
    if (!(next < gap_norm)) break;
    y = ya;
    gap_norm = next;
  }

  // Return the cone iterate: PSD exactly, off the affine constraints only by
  // the primal residual.
  Eigen::MatrixXd out = Smat(y, m);
  const double obj = c.dot(y);
  report.objective = program.sense == Sense::kMinimize ? -obj : obj;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(out, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = eig.eigenvalues()(0);
  return {std::move(out), std::move(report)};
}

std::pair<MomentSolution, SolveReport> Solve(const Relaxation& relaxation,
                                             const CspInstance& instance,
                                             const SolverConfig& config) {
  auto [moments, report] = SolveProgram(relaxation.reduced, config);
  // Row 0 is the empty monomial; rescaling restores M[0,0] = 1 exactly.
  if (moments(0, 0) > 0.0) moments /= moments(0, 0);
  MomentSolution solution;
  solution.level = relaxation.level;
  solution.index_set = relaxation.index_set;
  solution.gram = relaxation.LiftGram(moments);
  solution.objective_value = ObjectiveOf(solution, instance);
  return {std::move(solution), std::move(report)};
}

}  // namespace gcsp
