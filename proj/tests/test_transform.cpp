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

#include "utimac/transform.hpp"

using namespace utimac;

namespace {

TrafficFrame frame_of(std::initializer_list<double> vals, std::int64_t t = 0) {
  TrafficFrame f;
  f.t = t;
  f.x.resize(static_cast<Index>(vals.size()));
  Index i = 0;
  for (double v : vals) f.x[i++] = v;
  return f;
}

}  // namespace

TEST_CASE("to_log_domain maps x=0, eps=1 to zero") {
  const Vector z = to_log_domain(frame_of({0.0}), Vector::Ones(1));
  CHECK(z[0] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("to_log_domain maps x=e-1, eps=1 to one") {
  const Vector z = to_log_domain(frame_of({std::exp(1.0) - 1.0}), Vector::Ones(1));
  CHECK(z[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("to_log_domain elementwise values") {
  const Vector z = to_log_domain(frame_of({3.0, 7.0}), Vector::Ones(2));
  CHECK(z[0] == doctest::Approx(1.386294).epsilon(1e-6));
  CHECK(z[1] == doctest::Approx(2.079442).epsilon(1e-6));
}

TEST_CASE("to_log_domain rejects bad input") {
  CHECK_THROWS_AS(to_log_domain(frame_of({-1.0}), Vector::Ones(1)), std::domain_error);
  TrafficFrame nan_frame = frame_of({1.0});
  nan_frame.x[0] = std::nan("");
  CHECK_THROWS_AS(to_log_domain(nan_frame, Vector::Ones(1)), std::domain_error);
  CHECK_THROWS_AS(to_log_domain(frame_of({1.0}), Vector::Zero(1)), std::domain_error);
  CHECK_THROWS_AS(to_log_domain(frame_of({1.0}), Vector::Ones(2)), std::domain_error);
}

TEST_CASE("from_log_domain basic values and clamping") {
  auto r = from_log_domain(Vector::Zero(1), Vector::Ones(1));
  CHECK(r.x[0] == doctest::Approx(0.0));
  CHECK_FALSE(r.saturated);

  r = from_log_domain(Vector::Ones(1), Vector::Ones(1));
  CHECK(r.x[0] == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));

  Vector z(1);
  z[0] = std::log(0.5);
  r = from_log_domain(z, Vector::Ones(1));
  CHECK(r.x[0] == 0.0);  // clamped from -0.5
}

TEST_CASE("from_log_domain saturates on exp overflow") {
  Vector z(1);
  z[0] = 1000.0;
  const auto r = from_log_domain(z, Vector::Ones(1));
  CHECK(r.saturated);
  CHECK(r.x[0] == kSaturationMax);
  z[0] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(from_log_domain(z, Vector::Ones(1)), std::domain_error);
}

TEST_CASE("log transform round trip within 1e-12 relative") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> mag(-3.0, 8.0);
  for (int rep = 0; rep < 200; ++rep) {
    TrafficFrame f = frame_of({0.0, 0.0, 0.0});
    for (Index j = 0; j < 3; ++j) f.x[j] = std::pow(10.0, mag(gen));
    Vector eps(3);
    eps << 1.0, 0.5, 2.0;
    const auto back = from_log_domain(to_log_domain(f, eps), eps);
    for (Index j = 0; j < 3; ++j) {
      CHECK(back.x[j] == doctest::Approx(f.x[j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("transform is monotone per coordinate") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> unif(0.0, 100.0);
  Vector vals(50);
  for (Index i = 0; i < vals.size(); ++i) vals[i] = unif(gen);
  std::sort(vals.data(), vals.data() + vals.size());
  const Vector eps = Vector::Constant(1, 1.0);
  double prev_z = -std::numeric_limits<double>::infinity();
  double prev_x = -1.0;
  for (Index i = 0; i < vals.size(); ++i) {
    TrafficFrame f;
    f.x = Vector::Constant(1, vals[i]);
    const double z = to_log_domain(f, eps)[0];
    CHECK(z >= prev_z);
    const double x = from_log_domain(Vector::Constant(1, z), eps).x[0];
    CHECK(x >= prev_x);
    prev_z = z;
    prev_x = x;
  }
}

TEST_CASE("partition_windows splits and keeps the remainder") {
  const auto series_of = [](int n) {
    std::vector<MaskedFrame> s;
    for (int i = 0; i < n; ++i) {
      MaskedFrame mf;
      mf.frame.t = i;
      mf.frame.x = Vector::Constant(2, static_cast<double>(i));
      mf.mask = ObservationMask::all_observed(2);
      s.push_back(mf);
    }
    return s;
  };
  const Vector eps = Vector::Ones(2);

  auto w = partition_windows(series_of(400), 200, eps);
  REQUIRE(w.size() == 2);
  CHECK(w[0].length() == 200);
  CHECK(w[1].length() == 200);

  w = partition_windows(series_of(5), 2, eps);
  REQUIRE(w.size() == 3);
  CHECK(w[0].length() == 2);
  CHECK(w[1].length() == 2);
  CHECK(w[2].length() == 1);

  w = partition_windows(series_of(1), 200, eps);
  REQUIRE(w.size() == 1);
  CHECK(w[0].length() == 1);

  CHECK(partition_windows({}, 10, eps).empty());
  CHECK_THROWS_AS(partition_windows(series_of(3), 0, eps), std::invalid_argument);
}

TEST_CASE("partition_windows concatenation reproduces the series") {
  std::vector<MaskedFrame> series;
  for (int i = 0; i < 23; ++i) {
    MaskedFrame mf;
    mf.frame.t = 100 + i;
    mf.frame.x = Vector::Constant(3, static_cast<double>(i * i));
    mf.mask = ObservationMask::all_observed(3);
    series.push_back(mf);
  }
  const auto windows = partition_windows(series, 7, Vector::Ones(3));
  std::size_t pos = 0;
  for (const auto& w : windows) {
    for (const auto& mf : w.frames) {
      REQUIRE(pos < series.size());
      CHECK(mf.frame.t == series[pos].frame.t);
      CHECK(mf.frame.x == series[pos].frame.x);
      ++pos;
    }
  }
  CHECK(pos == series.size());
}

TEST_CASE("submatrix selects principal and cross blocks") {
  const Matrix id3 = Matrix::Identity(3, 3);
  CHECK(submatrix(id3, {0, 2}, {0, 2}) == Matrix::Identity(2, 2));

  Matrix s(2, 2);
  s << 2, 1, 1, 3;
  CHECK(submatrix(s, {1}, {1})(0, 0) == 3.0);
  CHECK(submatrix(s, {0}, {1})(0, 0) == 1.0);
  CHECK_THROWS_AS(submatrix(s, {2}, {0}), std::out_of_range);
}
