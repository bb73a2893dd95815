// utimac/uncertainty.hpp
//
// Posterior inference for missing entries. The unobserved principal
// component given the observed one is Gaussian with the standard
// conditional moments; adding the Laplace deviation prior gives each
// missing coordinate a Normal-Laplace marginal whose CDF has the
// closed form
//   F(z) = Phi(a) - (1/2) exp(k^2/2 - a k) Phi(a - k)
//               + (1/2) exp(k^2/2 + a k) Phi(-a - k),
// with a = (z - m)/s and k = s/b. Symmetric credible intervals in the
// log domain map monotonically to the traffic domain.

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

#ifndef UTIMAC_UNCERTAINTY_HPP
#define UTIMAC_UNCERTAINTY_HPP

#include "utimac/bcd.hpp"
#include "utimac/types.hpp"

namespace utimac {

/// Conditional Gaussian of the missing principal-component coordinates.
struct ConditionalGaussian {
  Vector m;  // conditional mean over the missing set
  Matrix v;  // conditional covariance (numerically PSD)
};

/// Per-coordinate posterior marginal: N(m, s^2) + Laplace(0, b).
struct NormalLaplaceMarginal {
  double m = 0.0;
  double s = 0.0;  // >= 0; s = 0 degenerates to a pure Laplace
  double b = 1.0;  // > 0

  double variance() const { return s * s + 2.0 * b * b; }
};

struct CredibleInterval {
  double lower = 0.0;
  double upper = 0.0;
  double point = 0.0;
  double level = 0.975;
  bool saturated = false;
};

/// Conditional moments of the missing block given u_obs on the observed
/// set: m = mu^M + S_MO S_OO^-1 (u_obs - mu^O), V = S_MM - S_MO S_OO^-1 S_OM.
/// An empty observed set returns the prior marginal.
ConditionalGaussian conditional_gaussian(const WindowParams& params,
                                         const ObservationMask& mask, const Vector& u_obs);

double nl_cdf(const NormalLaplaceMarginal& marg, double z);
double nl_pdf(const NormalLaplaceMarginal& marg, double z);

/// The half-width delta > 0 with F(m + delta) = (1 + level)/2, found by
/// bisection on a bracket guaranteed by the CDF tails.
double nl_quantile_halfwidth(const NormalLaplaceMarginal& marg, double level);

/// Symmetric log-domain interval mapped through exp(.) - eps_j and clamped
/// at zero. The point estimate is the posterior median.
CredibleInterval impute_entry(const NormalLaplaceMarginal& marg, double eps_j, double level);

struct ImputedEntry {
  Index frame = 0;  // index within the window
  Index flow = 0;
  CredibleInterval interval;
};

struct WindowCompletion {
  std::vector<Vector> completed;      // one d-vector per frame
  std::vector<ImputedEntry> entries;  // one record per missing entry
};

/// Observed entries pass through unchanged; missing entries receive the
/// posterior point estimate and credible interval.
WindowCompletion complete_window(const TrafficWindow& w, const FitState& fit, double level);

}  // namespace utimac

#endif  // UTIMAC_UNCERTAINTY_HPP
