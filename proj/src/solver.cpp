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

#include "utimac/solver.hpp"

#include <cmath>

namespace utimac {

namespace {

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

double kkt_from_gradient(const Vector& g, const Vector& o, double lambda) {
  double worst = 0.0;
  for (Index j = 0; j < o.size(); ++j) {
    double viol;
    if (o[j] != 0.0) {
      viol = std::fabs(g[j] + lambda * (o[j] > 0.0 ? 1.0 : -1.0));
    } else {
      viol = std::max(0.0, std::fabs(g[j]) - lambda);
    }
    worst = std::max(worst, viol);
  }
  return worst;
}

}  // namespace

double l1quad_objective(const L1QuadProblem& p, const Vector& o) {
  const Vector diff = o - p.r;
  return 0.5 * diff.dot(p.q * diff) + p.lambda * o.lpNorm<1>();
}

double kkt_residual(const L1QuadProblem& p, const Vector& o) {
  const Vector g = p.q * (o - p.r);
  return kkt_from_gradient(g, o, p.lambda);
}

DeviationSolution solve_deviation(const L1QuadProblem& p, double tol, int max_sweeps,
                                  const Vector* warm_start) {
  const Index m = p.r.size();
  if (p.q.rows() != m || p.q.cols() != m) {
    throw std::invalid_argument("solve_deviation: Q/r dimension mismatch");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("solve_deviation: tol must be > 0");
  if (max_sweeps <= 0) max_sweeps = 1000 * static_cast<int>(m);

  DeviationSolution sol;
  if (m == 0) return sol;

  Vector o = (warm_start != nullptr && warm_start->size() == m) ? *warm_start
                                                                : Vector::Zero(m);
  Vector g = p.q * (o - p.r);  // gradient of the quadratic part

  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (Index j = 0; j < m; ++j) {
      const double a = p.q(j, j);
      const double c = a * o[j] - g[j];  // partial residual
      const double next = soft_threshold(c / a, p.lambda / a);
      const double delta = next - o[j];
      if (delta != 0.0) {
        g.noalias() += p.q.col(j) * delta;
        o[j] = next;
      }
    }
    // Refresh the gradient: incremental updates drift over many sweeps.
    g.noalias() = p.q * (o - p.r);
    sol.sweeps = sweep;
    sol.sweep_objectives.push_back(0.5 * (o - p.r).dot(g) + p.lambda * o.lpNorm<1>());
    if (kkt_from_gradient(g, o, p.lambda) <= tol) {
      sol.converged = true;
      sol.o = std::move(o);
      sol.objective = sol.sweep_objectives.back();
      return sol;
    }
  }
  sol.converged = false;
  sol.o = std::move(o);
  sol.objective = sol.sweep_objectives.back();
  return sol;
}

}  // namespace utimac
