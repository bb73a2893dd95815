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

#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "utimac/metrics.hpp"

using namespace utimac;

namespace {

Vector vec(std::initializer_list<double> vals) {
  Vector v(static_cast<Index>(vals.size()));
  Index i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("overall metrics: perfect imputation") {
  EvalInput in;
  in.truth = {vec({1.0, 2.0})};
  in.imputed = in.truth;
  in.masks = {ObservationMask({false, true})};
  const auto m = overall_metrics(in);
  CHECK(m.mae == 0.0);
  CHECK(m.rmse == 0.0);
  CHECK(m.wmape == 0.0);
}

TEST_CASE("overall metrics: single entry") {
  EvalInput in;
  in.truth = {vec({10.0, 5.0})};
  in.imputed = {vec({12.0, 5.0})};
  in.masks = {ObservationMask({false, true})};
  const auto m = overall_metrics(in);
  CHECK(m.mae == doctest::Approx(2.0));
  CHECK(m.rmse == doctest::Approx(2.0));
  CHECK(m.wmape == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("overall metrics: pooled two-entry case") {
  EvalInput in;
  in.truth = {vec({10.0, 7.0}), vec({20.0, 7.0})};
  in.imputed = {vec({12.0, 7.0}), vec({19.0, 7.0})};
  in.masks = {ObservationMask({false, true}), ObservationMask({false, true})};
  const auto m = overall_metrics(in);
  CHECK(m.mae == doctest::Approx(1.5));
  CHECK(m.rmse == doctest::Approx(std::sqrt(2.5)).epsilon(1e-12));
  CHECK(m.wmape == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("overall metrics: zero missing entries is an error") {
  EvalInput in;
  in.truth = {vec({1.0})};
  in.imputed = {vec({1.0})};
  in.masks = {ObservationMask({true})};
  CHECK_THROWS_AS(overall_metrics(in), std::runtime_error);
}

TEST_CASE("burst set on the worked example and the paper settings") {
  const BurstConfig cfg;  // alpha = 2.0, beta = 0.8
  CHECK(cfg.alpha == 2.0);
  CHECK(cfg.beta == 0.8);
  const auto set = burst_set(vec({10.0, 1.0, 1.0}), cfg);
  REQUIRE(set.size() == 1);
  CHECK(set[0] == 0);

  CHECK(burst_set(vec({4.0, 4.0, 4.0}), cfg).empty());
  CHECK_THROWS_AS(burst_set(vec({1.0}), cfg), std::invalid_argument);
}

TEST_CASE("burst set counts ties as dominance and is scale invariant") {
  const BurstConfig cfg;
  const Vector frame = vec({2.0, 1.0, 1.0});  // 2.0 >= 2*1.0 exactly
  const auto set = burst_set(frame, cfg);
  REQUIRE(set.size() == 1);
  CHECK(set[0] == 0);

  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> unif(0.0, 10.0);
  for (int rep = 0; rep < 50; ++rep) {
    Vector f(6);
    for (Index j = 0; j < 6; ++j) f[j] = unif(gen);
    for (double c : {0.001, 3.0, 1e6}) {
      CHECK(burst_set(f, cfg) == burst_set(c * f, cfg));
    }
  }
}

TEST_CASE("burst detection: exact match and empty prediction") {
  const BurstConfig cfg;
  EvalInput in;
  in.truth = {vec({10.0, 1.0, 1.0})};
  in.imputed = in.truth;
  in.masks = {ObservationMask({false, true, true})};
  auto det = burst_detection(in, cfg);
  CHECK(det.precision == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(det.recall == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(det.f1 == doctest::Approx(1.0).epsilon(1e-9));

  in.imputed = {vec({1.0, 1.0, 1.0})};  // never predicts a burst
  det = burst_detection(in, cfg);
  CHECK(det.recall == doctest::Approx(0.0));
  CHECK(det.f1 == doctest::Approx(0.0));
}

TEST_CASE("burst detection pooled counts") {
  // Pooled TP=3, FP=1, FN=2: three hits, two missed bursts, one frame with
  // a spurious predicted burst.
  const BurstConfig cfg;
  const Vector burst_frame = vec({100.0, 1.0, 1.0, 1.0});
  const Vector flat_frame = vec({1.0, 1.0, 1.0, 1.0});
  EvalInput in;
  in.truth = {burst_frame, burst_frame, burst_frame, burst_frame, burst_frame, flat_frame};
  in.imputed = {burst_frame, burst_frame, burst_frame, flat_frame, flat_frame, burst_frame};
  in.masks = std::vector<ObservationMask>(6, ObservationMask({false, false, true, true}));
  const auto det = burst_detection(in, cfg);
  CHECK(det.precision == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(det.recall == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(det.f1 == doctest::Approx(2.0 * 0.75 * 0.6 / 1.35).epsilon(1e-9));
}

TEST_CASE("burst accuracy restricted to true missing bursts") {
  const BurstConfig cfg;
  EvalInput in;
  in.truth = {vec({100.0, 1.0, 1.0})};
  in.imputed = {vec({80.0, 1.0, 1.0})};
  in.masks = {ObservationMask({false, true, true})};
  auto bm = burst_metrics(in, cfg);
  REQUIRE(bm.applicable);
  CHECK(bm.mae == doctest::Approx(20.0));
  CHECK(bm.rmse == doctest::Approx(20.0));
  CHECK(bm.wmape == doctest::Approx(0.2).epsilon(1e-9));

  // Perfect on burst positions.
  in.imputed = in.truth;
  bm = burst_metrics(in, cfg);
  CHECK(bm.mae == 0.0);
  CHECK(bm.wmape == 0.0);

  // Burst entry 20 -> 19 only (entry 20 dominates in a [20,1,...] frame).
  in.truth = {vec({10.0, 7.0, 7.0}), vec({20.0, 1.0, 1.0})};
  in.imputed = {vec({12.0, 7.0, 7.0}), vec({19.0, 1.0, 1.0})};
  in.masks = {ObservationMask({false, true, true}), ObservationMask({false, true, true})};
  bm = burst_metrics(in, cfg);
  REQUIRE(bm.applicable);
  CHECK(bm.mae == doctest::Approx(1.0));
  CHECK(bm.rmse == doctest::Approx(1.0));
  CHECK(bm.wmape == doctest::Approx(0.05).epsilon(1e-9));

  // No burst-missing positions -> not applicable rather than zero.
  in.truth = {vec({5.0, 5.0, 5.0})};
  in.imputed = {vec({5.0, 5.0, 5.0})};
  in.masks = {ObservationMask({false, true, true})};
  bm = burst_metrics(in, cfg);
  CHECK_FALSE(bm.applicable);
}

TEST_CASE("picp counts coverage and demands complete intervals") {
  EvalInput in;
  in.truth = {vec({10.0, 3.0})};
  in.imputed = {vec({11.0, 3.0})};
  in.masks = {ObservationMask({false, false})};
  std::vector<IntervalRecord> recs = {{0, 0, 8.0, 12.0, 11.0, 0.975},
                                      {0, 1, 5.0, 7.0, 6.0, 0.975}};
  in.intervals = &recs;
  CHECK(picp(in, 0.975) == doctest::Approx(0.5));

  recs[1] = {0, 1, 2.0, 4.0, 3.0, 0.975};
  CHECK(picp(in, 0.975) == doctest::Approx(1.0));

  recs.pop_back();
  CHECK_THROWS_AS(picp(in, 0.975), std::runtime_error);

  in.intervals = nullptr;
  CHECK_THROWS_AS(picp(in, 0.975), std::runtime_error);
}

TEST_CASE("metrics are invariant to permuting frames") {
  std::mt19937_64 gen(15);
  std::uniform_real_distribution<double> unif(0.1, 50.0);
  EvalInput in;
  for (int t = 0; t < 6; ++t) {
    Vector truth(4), imp(4);
    std::vector<bool> bits(4);
    for (Index j = 0; j < 4; ++j) {
      truth[j] = unif(gen);
      imp[j] = unif(gen);
      bits[static_cast<std::size_t>(j)] = (gen() % 2) == 0;
    }
    bits[0] = false;  // keep at least one missing entry per frame
    in.truth.push_back(truth);
    in.imputed.push_back(imp);
    in.masks.emplace_back(bits);
  }
  const auto base_overall = overall_metrics(in);
  const auto base_det = burst_detection(in, BurstConfig{});

  EvalInput shuffled = in;
  std::vector<std::size_t> order = {3, 0, 5, 1, 4, 2};
  for (std::size_t i = 0; i < order.size(); ++i) {
    shuffled.truth[i] = in.truth[order[i]];
    shuffled.imputed[i] = in.imputed[order[i]];
    shuffled.masks[i] = in.masks[order[i]];
  }
  const auto shuf_overall = overall_metrics(shuffled);
  CHECK(shuf_overall.mae == doctest::Approx(base_overall.mae).epsilon(1e-12));
  CHECK(shuf_overall.rmse == doctest::Approx(base_overall.rmse).epsilon(1e-12));
  CHECK(shuf_overall.wmape == doctest::Approx(base_overall.wmape).epsilon(1e-12));
  const auto shuf_det = burst_detection(shuffled, BurstConfig{});
  CHECK(shuf_det.f1 == doctest::Approx(base_det.f1).epsilon(1e-12));
}

TEST_CASE("wMAPE identity against MAE") {
  std::mt19937_64 gen(25);
  std::uniform_real_distribution<double> unif(0.0, 20.0);
  for (int rep = 0; rep < 20; ++rep) {
    EvalInput in;
    std::int64_t missing = 0;
    double truth_abs = 0.0;
    for (int t = 0; t < 4; ++t) {
      Vector truth(3), imp(3);
      std::vector<bool> bits = {false, (gen() % 2) == 0, false};
      for (Index j = 0; j < 3; ++j) {
        truth[j] = unif(gen);
        imp[j] = unif(gen);
      }
      in.truth.push_back(truth);
      in.imputed.push_back(imp);
      in.masks.emplace_back(bits);
      for (Index j : in.masks.back().missing_indices()) {
        ++missing;
        truth_abs += std::fabs(truth[j]);
      }
    }
    const auto m = overall_metrics(in);
    const double expect = m.mae * static_cast<double>(missing) / (truth_abs + in.eps_metric);
    CHECK(m.wmape == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("detection and coverage values stay in [0,1]") {
  std::mt19937_64 gen(35);
  std::uniform_real_distribution<double> unif(0.0, 100.0);
  for (int rep = 0; rep < 30; ++rep) {
    EvalInput in;
    for (int t = 0; t < 3; ++t) {
      Vector truth(5), imp(5);
      std::vector<bool> bits(5);
      for (Index j = 0; j < 5; ++j) {
        truth[j] = unif(gen);
        imp[j] = unif(gen);
        bits[static_cast<std::size_t>(j)] = (gen() % 3) != 0;
      }
      in.truth.push_back(truth);
      in.imputed.push_back(imp);
      in.masks.emplace_back(bits);
    }
    const auto det = burst_detection(in, BurstConfig{});
    for (double v : {det.precision, det.recall, det.f1}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("metrics JSON report schema") {
  EvalInput in;
  in.truth = {vec({10.0, 1.0, 1.0})};
  in.imputed = {vec({12.0, 1.0, 1.0})};
  in.masks = {ObservationMask({false, true, true})};
  const auto summary = evaluate_all(in, BurstConfig{}, 0.975);
  const auto j = nlohmann::json::parse(metrics_report_json(summary));
  CHECK(j.contains("mae"));
  CHECK(j.contains("rmse"));
  CHECK(j.contains("wmape"));
  CHECK(j["burst"].contains("precision"));
  CHECK(j["burst"].contains("wmape"));
  CHECK(j["missing_entries"] == 1);
  CHECK(j["burst_missing_entries"] == 1);
  CHECK_FALSE(j.contains("picp"));  // omitted without intervals, never zero
}
