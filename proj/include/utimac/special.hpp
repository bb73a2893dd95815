// utimac/special.hpp
//
// Scalar special functions needed by the posterior and diagnostics code:
// standard normal CDF (plain and log form, stable deep into the lower
// tail), the regularized lower incomplete gamma, and the chi-square
// CDF/quantile pair.

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

#ifndef UTIMAC_SPECIAL_HPP
#define UTIMAC_SPECIAL_HPP

namespace utimac {

double norm_pdf(double u);
double norm_cdf(double u);

/// ln Phi(u), valid for all finite u (asymptotic series below u = -36
/// where erfc underflows).
double log_norm_cdf(double u);

/// ln( exp(u^2/2) Phi(u) ) = u^2/2 + ln Phi(u), computed without forming
/// the two huge opposing terms; this is the stable building block for
/// products of a Gaussian tail with an exploding exponential prefactor.
double log_scaled_norm_cdf(double u);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);

double chi2_cdf(double dof, double x);

/// Inverse chi-square CDF via Wilson-Hilferty start + safeguarded Newton.
/// Absolute probability accuracy ~1e-12, well inside the 1e-10 target.
double chi2_quantile(double dof, double p);

}  // namespace utimac

#endif  // UTIMAC_SPECIAL_HPP
