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

#include "utimac/uncertainty.hpp"

#include <algorithm>
#include <cmath>

#include "utimac/frame_view.hpp"
#include "utimac/special.hpp"
#include "utimac/transform.hpp"

namespace utimac {

namespace {

// One exponential-times-Gaussian-tail term of the closed-form CDF:
//   exp(kappa^2/2 - sign*alpha*kappa) * Phi(sign*alpha - kappa).
// For deep tail arguments the exponent is rewritten through the identity
// kappa^2/2 - sign*alpha*kappa = (sign*alpha - kappa)^2/2 - alpha^2/2 so
// the huge opposing parts never meet; the exponent is capped at 700
// before exponentiation (the true product is bounded by 1).
double exp_phi_term(double alpha, double kappa, double sign) {
  const double u = sign * alpha - kappa;
  double e;
  if (u < -8.0) {
    e = -0.5 * alpha * alpha + log_scaled_norm_cdf(u);
  } else {
    e = 0.5 * kappa * kappa - sign * alpha * kappa + log_norm_cdf(u);
  }
  return std::exp(std::min(e, 700.0));
}

void check_marginal(const NormalLaplaceMarginal& marg) {
  if (!(marg.b > 0.0) || marg.s < 0.0 || !std::isfinite(marg.m)) {
    throw std::domain_error("NormalLaplaceMarginal: requires b > 0, s >= 0, finite m");
  }
}

double laplace_cdf(double x, double b) {
  return x < 0.0 ? 0.5 * std::exp(x / b) : 1.0 - 0.5 * std::exp(-x / b);
}

}  // namespace

ConditionalGaussian conditional_gaussian(const WindowParams& params,
                                         const ObservationMask& mask, const Vector& u_obs) {
  const IndexList& obs = mask.observed_indices();
  const IndexList& mis = mask.missing_indices();
  if (u_obs.size() != static_cast<Index>(obs.size())) {
    throw std::invalid_argument("conditional_gaussian: u_obs length mismatch");
  }
  ConditionalGaussian out;
  if (mis.empty()) {
    out.m = Vector(0);
    out.v = Matrix(0, 0);
    return out;
  }
  if (obs.empty()) {
    out.m = subvector(params.mu, mis);
    out.v = submatrix(params.sigma, mis, mis);
    return out;
  }
  const Matrix sig_oo = submatrix(params.sigma, obs, obs);
  Eigen::LLT<Matrix> llt(sig_oo);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("conditional_gaussian: singular observed block");
  }
  const Matrix sig_mo = submatrix(params.sigma, mis, obs);
  const Matrix regression = llt.solve(sig_mo.transpose()).transpose();
  const Vector innovation = u_obs - subvector(params.mu, obs);
  out.m = subvector(params.mu, mis) + regression * innovation;
  out.v = submatrix(params.sigma, mis, mis) - regression * sig_mo.transpose();
  return out;
}

double nl_cdf(const NormalLaplaceMarginal& marg, double z) {
  check_marginal(marg);
  if (marg.s == 0.0) return laplace_cdf(z - marg.m, marg.b);
  const double alpha = (z - marg.m) / marg.s;
  const double kappa = marg.s / marg.b;
  const double f = norm_cdf(alpha) - 0.5 * exp_phi_term(alpha, kappa, 1.0) +
                   0.5 * exp_phi_term(alpha, kappa, -1.0);
  return std::clamp(f, 0.0, 1.0);
}

double nl_pdf(const NormalLaplaceMarginal& marg, double z) {
  check_marginal(marg);
  if (marg.s == 0.0) {
    return 0.5 / marg.b * std::exp(-std::fabs(z - marg.m) / marg.b);
  }
  const double alpha = (z - marg.m) / marg.s;
  const double kappa = marg.s / marg.b;
  return 0.5 / marg.b * (exp_phi_term(alpha, kappa, 1.0) + exp_phi_term(alpha, kappa, -1.0));
}

double nl_quantile_halfwidth(const NormalLaplaceMarginal& marg, double level) {
  check_marginal(marg);
  if (!(level > 0.0) || !(level < 1.0)) {
    throw std::domain_error("nl_quantile_halfwidth: level must be in (0,1)");
  }
  const double target = 0.5 * (1.0 + level);
  double lo = 0.0;
  double hi = 10.0 * std::sqrt(marg.variance()) + 50.0 * marg.b;
  double mid = 0.0;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double f = nl_cdf(marg, marg.m + mid);
    if (std::fabs(f - target) <= 1e-12) break;
    (f < target ? lo : hi) = mid;
    if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
  }
  return mid;
}

CredibleInterval impute_entry(const NormalLaplaceMarginal& marg, double eps_j, double level) {
  check_marginal(marg);
  const double delta = nl_quantile_halfwidth(marg, level);
  CredibleInterval ci;
  ci.level = level;
  const auto back = [&](double logval) {
    double v = std::exp(logval) - eps_j;
    if (!std::isfinite(v) || v > kSaturationMax) {
      v = kSaturationMax;
      ci.saturated = true;
    }
    return std::max(v, 0.0);
  };
  ci.point = back(marg.m);  // posterior median commutes with the monotone map
  ci.lower = back(marg.m - delta);
  ci.upper = back(marg.m + delta);
  return ci;
}

WindowCompletion complete_window(const TrafficWindow& w, const FitState& fit, double level) {
  WindowCompletion out;
  out.completed.reserve(w.frames.size());
  const double b = 1.0 / fit.params.lambda;
  const std::vector<FrameView> views = build_frame_views(w);

  for (std::size_t tau = 0; tau < w.frames.size(); ++tau) {
    const MaskedFrame& mf = w.frames[tau];
    Vector filled = mf.frame.x;
    const IndexList& mis = mf.mask.missing_indices();
    if (!mis.empty()) {
      const Vector u_obs = views[tau].z_obs - fit.deviations.o[tau];
      const ConditionalGaussian cond = conditional_gaussian(fit.params, mf.mask, u_obs);
      for (std::size_t k = 0; k < mis.size(); ++k) {
        const Index j = mis[k];
        NormalLaplaceMarginal marg;
        marg.m = cond.m[static_cast<Index>(k)];
        marg.s = std::sqrt(std::max(cond.v(static_cast<Index>(k), static_cast<Index>(k)), 0.0));
        marg.b = b;
        ImputedEntry entry;
        entry.frame = static_cast<Index>(tau);
        entry.flow = j;
        entry.interval = impute_entry(marg, w.eps[j], level);
        filled[j] = entry.interval.point;
        out.entries.push_back(entry);
      }
    }
    out.completed.push_back(std::move(filled));
  }
  return out;
}

}  // namespace utimac
