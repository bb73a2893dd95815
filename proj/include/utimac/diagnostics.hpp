// utimac/diagnostics.hpp
//
// Gaussianity diagnostics: squared Mahalanobis distances of a window's
// log-domain frames against chi-square(d) quantiles at the (k-0.5)/n
// plotting positions.

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

#ifndef UTIMAC_DIAGNOSTICS_HPP
#define UTIMAC_DIAGNOSTICS_HPP

#include "utimac/types.hpp"

namespace utimac {

struct QQData {
  std::vector<double> ordered_d2;     // ascending
  std::vector<double> theoretical_q;  // matched chi-square quantiles, ascending
};

/// (z - mu)^T Sigma^-1 (z - mu); throws on a singular Sigma.
double mahalanobis_sq(const Vector& z, const Vector& mu_hat, const Matrix& sigma_hat);

/// QQ data for chi-square(d). With use_sample_moments the mean and the
/// unbiased sample covariance are estimated from `samples` (needs
/// n >= d + 1); otherwise mu_hat/sigma_hat must be supplied.
QQData qq_chi2(const std::vector<Vector>& samples, bool use_sample_moments,
               const Vector* mu_hat = nullptr, const Matrix* sigma_hat = nullptr);

}  // namespace utimac

#endif  // UTIMAC_DIAGNOSTICS_HPP
