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

#ifndef GCSP_SDP_SOLVER_HPP_
#define GCSP_SDP_SOLVER_HPP_

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gcsp/instance.hpp"
#include "gcsp/lasserre.hpp"

namespace gcsp {

struct SolverConfig {
  int max_iterations = 200000;
  double primal_tolerance = 1e-7;
  double dual_tolerance = 1e-7;
  double step = 0.0;             // 0 picks 1 / max(1, |C|)
  double over_relaxation = 1.5;  // in [1, 2)
  int check_every = 10;
  bool adaptive_step = true;
  // Alternating-projection rounds applied to the final iterate.
  int polish_rounds = 200;
  std::uint64_t seed = 0;  // reserved for randomized restarts; unused by the splitting
};

void ValidateSolverConfig(const SolverConfig& config);

enum class SolveStatus { kOptimal, kMaxIterations, kInfeasibleSuspected };
std::string_view SolveStatusName(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::kMaxIterations;
  int iterations = 0;
  double primal_residual = 0.0;  // |X - Y| relative, X affine-feasible and Y PSD
  double dual_residual = 0.0;    // relative primal/dual objective gap
  double objective = 0.0;
  double dual_objective = 0.0;   // b·λ, an upper bound (max) when residuals vanish
  double min_eigenvalue = 0.0;   // of the returned matrix
  std::vector<double> residual_history;  // combined residual every check_every iterations
};

// Nearest PSD matrix in Frobenius norm (eigenvalues clipped at zero).
Eigen::MatrixXd ProjectPsd(const Eigen::MatrixXd& symmetric);

// Douglas-Rachford splitting between the affine set {A(X) = b} (projection via
// a cached factorization of A·Aᵀ) and the PSD cone (dense eigendecomposition).
// Returns the PSD-cone iterate after a short alternating-projection polish;
// it misses the affine constraints only by the final primal residual.
std::pair<Eigen::MatrixXd, SolveReport> SolveProgram(const ConicProgram& program,
                                                     const SolverConfig& config = {});

// Solves the reduced form of the relaxation and lifts it to the (S, α) gram.
std::pair<MomentSolution, SolveReport> Solve(const Relaxation& relaxation,
                                             const CspInstance& instance,
                                             const SolverConfig& config = {});

}  // namespace gcsp

#endif  // GCSP_SDP_SOLVER_HPP_
