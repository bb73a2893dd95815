// utimac/solver.hpp
//
// Per-frame deviation subproblem: minimize over o
//   (1/2) (o - r)^T Q (o - r) + lambda * ||o||_1
// with Q symmetric positive definite. Solved by cyclic coordinate
// descent; each coordinate update is the exact 1-D minimizer
// soft_threshold(c_j / Q_jj, lambda / Q_jj).

// Copyright 2026 The Utimac Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UTIMAC_SOLVER_HPP
#define UTIMAC_SOLVER_HPP

#include <vector>

#include "utimac/types.hpp"

namespace utimac {

struct L1QuadProblem {
  Vector r;        // residual z^(Omega) - mu^(Omega)
  Matrix q;        // inverse observed-block covariance, symmetric PD
  double lambda = 0.0;
};

struct DeviationSolution {
  Vector o;
  double objective = 0.0;
  bool converged = true;
  int sweeps = 0;
  std::vector<double> sweep_objectives;  // objective after each full sweep
};

double l1quad_objective(const L1QuadProblem& p, const Vector& o);

/// Max coordinate violation of the subdifferential optimality condition.
/// With g = Q(o - r): |g_j + lambda*sgn(o_j)| where o_j != 0, and
/// max(0, |g_j| - lambda) where o_j = 0.
double kkt_residual(const L1QuadProblem& p, const Vector& o);

/// max_sweeps = 0 selects the default of 1000 * m full sweeps.
/// warm_start, when given, must have length m.
DeviationSolution solve_deviation(const L1QuadProblem& p, double tol = 1e-8,
                                  int max_sweeps = 0, const Vector* warm_start = nullptr);

}  // namespace utimac

#endif  // UTIMAC_SOLVER_HPP
