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

#include "utimac/diagnostics.hpp"

#include <algorithm>
#include <stdexcept>

#include "utimac/special.hpp"

namespace utimac {

double mahalanobis_sq(const Vector& z, const Vector& mu_hat, const Matrix& sigma_hat) {
  if (z.size() != mu_hat.size() || sigma_hat.rows() != z.size() ||
      sigma_hat.cols() != z.size()) {
    throw std::invalid_argument("mahalanobis_sq: dimension mismatch");
  }
  Eigen::LLT<Matrix> llt(sigma_hat);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("mahalanobis_sq: covariance is singular");
  }
  const Vector diff = z - mu_hat;
  return diff.dot(llt.solve(diff));
}

QQData qq_chi2(const std::vector<Vector>& samples, bool use_sample_moments,
               const Vector* mu_hat, const Matrix* sigma_hat) {
  const std::size_t n = samples.size();
  if (n < 2) throw std::invalid_argument("qq_chi2: need at least two samples");
  const Index d = samples.front().size();
  if (d < 1) throw std::invalid_argument("qq_chi2: need d >= 1");
  for (const Vector& s : samples) {
    if (s.size() != d) throw std::invalid_argument("qq_chi2: inconsistent sample dimensions");
  }

  Vector mu;
  Matrix sigma;
  if (use_sample_moments) {
    mu = Vector::Zero(d);
    for (const Vector& s : samples) mu += s;
    mu /= static_cast<double>(n);
    sigma = Matrix::Zero(d, d);
    for (const Vector& s : samples) {
      const Vector c = s - mu;
      sigma.noalias() += c * c.transpose();
    }
    sigma /= static_cast<double>(n - 1);
  } else {
    if (mu_hat == nullptr || sigma_hat == nullptr) {
      throw std::invalid_argument("qq_chi2: moments required when use_sample_moments=false");
    }
    mu = *mu_hat;
    sigma = *sigma_hat;
  }

  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error(
        "qq_chi2: covariance is singular (sample covariance needs n >= d + 1)");
  }

  QQData out;
  out.ordered_d2.reserve(n);
  for (const Vector& s : samples) {
    const Vector diff = s - mu;
    out.ordered_d2.push_back(diff.dot(llt.solve(diff)));
  }
  std::sort(out.ordered_d2.begin(), out.ordered_d2.end());
  out.theoretical_q.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    out.theoretical_q.push_back(chi2_quantile(
        static_cast<double>(d), (static_cast<double>(k) - 0.5) / static_cast<double>(n)));
  }
  return out;
}

}  // namespace utimac
