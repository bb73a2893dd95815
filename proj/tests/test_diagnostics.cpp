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

#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "utimac/diagnostics.hpp"
#include "utimac/special.hpp"

using namespace utimac;

TEST_CASE("mahalanobis_sq hand cases") {
  const Vector mu = (Vector(2) << 1.0, 2.0).finished();
  CHECK(mahalanobis_sq(mu, mu, Matrix::Identity(2, 2)) == 0.0);

  Vector z = mu;
  z[0] += 1.0;
  CHECK(mahalanobis_sq(z, mu, Matrix::Identity(2, 2)) == doctest::Approx(1.0));

  const Matrix diag = (Vector(2) << 4.0, 1.0).finished().asDiagonal();
  z = mu;
  z[0] += 2.0;
  z[1] += 1.0;
  CHECK(mahalanobis_sq(z, mu, diag) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(mahalanobis_sq(z, mu, Matrix::Zero(2, 2)), std::runtime_error);
}

TEST_CASE("mahalanobis_sq is non-negative, zero only at the center") {
  std::mt19937_64 gen(2);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Matrix sigma = oracles::random_spd(3, gen);
  const Vector mu = Vector::Zero(3);
  for (int rep = 0; rep < 100; ++rep) {
    Vector z(3);
    for (Index j = 0; j < 3; ++j) z[j] = normal(gen);
    const double d2 = mahalanobis_sq(z, mu, sigma);
    CHECK(d2 >= 0.0);
    if (z.norm() > 1e-8) CHECK(d2 > 0.0);
  }
}

TEST_CASE("mahalanobis_sq is affine invariant") {
  std::mt19937_64 gen(8);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    const Index d = 4;
    const Matrix sigma = oracles::random_spd(d, gen);
    Vector z(d), mu(d);
    for (Index j = 0; j < d; ++j) {
      z[j] = normal(gen);
      mu[j] = normal(gen);
    }
    Matrix a(d, d);
    do {
      for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) a(i, j) = normal(gen);
      }
    } while (std::fabs(a.determinant()) < 1e-3);
    const double base = mahalanobis_sq(z, mu, sigma);
    const double mapped = mahalanobis_sq(a * z, a * mu, a * sigma * a.transpose());
    CHECK(mapped == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("qq_chi2 handles the two-point hand case") {
  std::vector<Vector> samples = {Vector::Constant(1, -1.0), Vector::Constant(1, 1.0)};
  const Vector mu = Vector::Zero(1);
  const Matrix sigma = Matrix::Identity(1, 1);
  const auto qq = qq_chi2(samples, false, &mu, &sigma);
  REQUIRE(qq.ordered_d2.size() == 2);
  CHECK(qq.ordered_d2[0] == doctest::Approx(1.0));
  CHECK(qq.ordered_d2[1] == doctest::Approx(1.0));
  CHECK(qq.theoretical_q[0] == doctest::Approx(chi2_quantile(1.0, 0.25)).epsilon(1e-12));
  CHECK(qq.theoretical_q[1] == doctest::Approx(chi2_quantile(1.0, 0.75)).epsilon(1e-12));
}

TEST_CASE("qq_chi2 with identical samples and supplied moments") {
  std::vector<Vector> samples(5, Vector::Constant(2, 3.0));
  const Vector mu = Vector::Constant(2, 3.0);
  const Matrix sigma = Matrix::Identity(2, 2);
  const auto qq = qq_chi2(samples, false, &mu, &sigma);
  for (double d2 : qq.ordered_d2) CHECK(d2 == 0.0);
}

TEST_CASE("qq_chi2 rejects rank-deficient sample moments") {
  std::vector<Vector> samples = {Vector::Zero(3), Vector::Ones(3), 2.0 * Vector::Ones(3)};
  CHECK_THROWS_AS(qq_chi2(samples, true), std::runtime_error);  // n < d + 1
  CHECK_THROWS_AS(qq_chi2({Vector::Zero(2)}, true), std::invalid_argument);
}

TEST_CASE("qq_chi2 tracks the reference line on Gaussian draws") {
  std::mt19937_64 gen(1717);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Index d = 4;
  const std::size_t n = 10000;
  std::vector<Vector> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector z(d);
    for (Index j = 0; j < d; ++j) z[j] = normal(gen);
    samples.push_back(z);
  }
  const auto qq = qq_chi2(samples, true);
  double worst = 0.0;
  for (std::size_t k = static_cast<std::size_t>(0.05 * n); k < static_cast<std::size_t>(0.95 * n);
       ++k) {
    worst = std::max(worst, std::fabs(qq.ordered_d2[k] - qq.theoretical_q[k]));
  }
  CHECK(worst <= 0.5);

  // Ordering invariants.
  CHECK(std::is_sorted(qq.ordered_d2.begin(), qq.ordered_d2.end()));
  CHECK(std::is_sorted(qq.theoretical_q.begin(), qq.theoretical_q.end()));
}

TEST_CASE("qq_chi2 flags heavy upper tails in the raw domain") {
  // Log-normal style raw data: the top Mahalanobis distance far exceeds the
  // chi-square quantile even with fitted sample moments.
  std::mt19937_64 gen(2121);
  std::normal_distribution<double> normal(0.0, 1.5);
  const Index d = 8;
  const std::size_t n = 200;
  std::vector<Vector> raw;
  raw.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector x(d);
    for (Index j = 0; j < d; ++j) x[j] = std::exp(normal(gen));
    raw.push_back(x);
  }
  const auto qq = qq_chi2(raw, true);
  CHECK(qq.ordered_d2.back() > 1.2 * qq.theoretical_q.back());
}
