// utimac/metrics.hpp
//
// Evaluation metrics, all pooled over missing positions only: MAE, RMSE,
// wMAPE; burst-flow detection (precision/recall/F1) and burst-restricted
// accuracy; PICP for interval calibration.

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

#ifndef UTIMAC_METRICS_HPP
#define UTIMAC_METRICS_HPP

#include <optional>
#include <string>

#include "utimac/types.hpp"

namespace utimac {

struct IntervalRecord {
  Index frame = 0;
  Index flow = 0;
  double lower = 0.0;
  double upper = 0.0;
  double point = 0.0;
  double level = 0.975;
};

struct EvalInput {
  std::vector<Vector> truth;
  std::vector<Vector> imputed;
  std::vector<ObservationMask> masks;
  const std::vector<IntervalRecord>* intervals = nullptr;  // optional
  double eps_metric = 1e-9;
};

struct BurstConfig {
  double alpha = 2.0;  // dominance multiplier, > 1
  double beta = 0.8;   // majority threshold, in (0,1)
};

struct OverallMetrics {
  double mae = 0.0;
  double rmse = 0.0;
  double wmape = 0.0;
};

struct DetectionMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Burst-restricted accuracy; `applicable` is false when no true missing
/// burst position exists (reported as not-applicable, never as zero).
struct BurstAccuracy {
  bool applicable = false;
  double mae = 0.0;
  double rmse = 0.0;
  double wmape = 0.0;
};

OverallMetrics overall_metrics(const EvalInput& input);

/// {k : r(k; alpha) >= beta} with r(k) the fraction of other entries that
/// x(k) dominates by factor alpha (ties count as dominance).
IndexList burst_set(const Vector& frame, const BurstConfig& cfg);

DetectionMetrics burst_detection(const EvalInput& input, const BurstConfig& cfg);

BurstAccuracy burst_metrics(const EvalInput& input, const BurstConfig& cfg);

/// Fraction of true missing values inside [lower, upper]. Requires an
/// interval for every missing entry.
double picp(const EvalInput& input, double level);

struct MetricsSummary {
  OverallMetrics overall;
  DetectionMetrics detection;
  BurstAccuracy burst;
  std::optional<double> picp_value;
  std::int64_t missing_entries = 0;
  std::int64_t burst_missing_entries = 0;
};

MetricsSummary evaluate_all(const EvalInput& input, const BurstConfig& cfg, double level);

/// JSON report with keys mae, rmse, wmape, burst{...}, picp and counts.
std::string metrics_report_json(const MetricsSummary& summary);

}  // namespace utimac

#endif  // UTIMAC_METRICS_HPP
