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

#include "utimac/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace utimac {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // ln sqrt(2*pi)
}  // namespace

double norm_pdf(double u) { return std::exp(-0.5 * u * u - kLogSqrt2Pi); }

double norm_cdf(double u) { return 0.5 * std::erfc(-u / kSqrt2); }

namespace {

// Sum of the asymptotic lower-tail series: Phi(u) ~ phi(u)/(-u) * (1 + S(u)),
// S(u) = -1/u^2 + 3/u^4 - 15/u^6 + 105/u^8 - ... (u << 0).
double lower_tail_series(double u) {
  const double u2 = u * u;
  double series = 0.0;
  double term = 1.0;
  for (int k = 1; k <= 6; ++k) {
    term *= -(2.0 * k - 1.0) / u2;
    series += term;
  }
  return series;
}

}  // namespace

double log_norm_cdf(double u) {
  if (u > -36.0) {
    return std::log(0.5 * std::erfc(-u / kSqrt2));
  }
  return -0.5 * u * u - kLogSqrt2Pi - std::log(-u) + std::log1p(lower_tail_series(u));
}

double log_scaled_norm_cdf(double u) {
  if (u > -36.0) {
    return 0.5 * u * u + std::log(0.5 * std::erfc(-u / kSqrt2));
  }
  return -kLogSqrt2Pi - std::log(-u) + std::log1p(lower_tail_series(u));
}

namespace {

// Series expansion of P(a, x), converges fast for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 1000; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) = 1 - P(a, x), for x >= a + 1.
double gamma_q_contfrac(double a, double x) {
  const double tiny = std::numeric_limits<double>::min() / 1e-30;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || !std::isfinite(x)) {
    throw std::domain_error("gamma_p: requires a > 0 and finite x >= 0");
  }
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_contfrac(a, x);
}

double chi2_cdf(double dof, double x) {
  if (!(dof > 0.0)) throw std::domain_error("chi2_cdf: dof must be positive");
  if (x <= 0.0) return 0.0;
  return gamma_p(0.5 * dof, 0.5 * x);
}

namespace {

// Inverse normal CDF by bisection; only used as a starting guess.
double norm_quantile(double q) {
  double lo = -40.0, hi = 40.0, mid = 0.0;
  for (int i = 0; i < 120; ++i) {
    mid = 0.5 * (lo + hi);
    (norm_cdf(mid) < q ? lo : hi) = mid;
  }
  return mid;
}

}  // namespace

double chi2_quantile(double dof, double p) {
  if (!(dof > 0.0) || !(p > 0.0) || !(p < 1.0)) {
    throw std::domain_error("chi2_quantile: need dof > 0 and p in (0,1)");
  }
  // Wilson-Hilferty starting point.
  const double z = norm_quantile(p);
  const double c = 2.0 / (9.0 * dof);
  double x = dof * std::pow(1.0 - c + z * std::sqrt(c), 3);
  if (!(x > 0.0) || !std::isfinite(x)) x = dof;

  // Safeguarded Newton on F(x) - p with bracketing.
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 200; ++it) {
    const double f = chi2_cdf(dof, x) - p;
    if (f > 0.0) {
      hi = std::min(hi, x);
    } else {
      lo = std::max(lo, x);
    }
    if (std::fabs(f) < 1e-14) break;
    const double a = 0.5 * dof;
    const double logpdf = (a - 1.0) * std::log(0.5 * x) - 0.5 * x - std::lgamma(a) -
                          std::log(2.0);
    const double pdf = std::exp(logpdf);
    double next = pdf > 0.0 ? x - f / pdf : x;
    if (!(next > lo) || !(next < hi) || !std::isfinite(next)) {
      next = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * (lo + 1.0);
    }
    if (next == x) break;
    x = next;
  }
  return x;
}

}  // namespace utimac
