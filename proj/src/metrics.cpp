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

#include "utimac/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace utimac {

namespace {

void check_shapes(const EvalInput& in) {
  if (in.truth.size() != in.imputed.size() || in.truth.size() != in.masks.size()) {
    throw std::invalid_argument("metrics: truth/imputed/mask frame counts differ");
  }
  for (std::size_t t = 0; t < in.truth.size(); ++t) {
    if (in.truth[t].size() != in.imputed[t].size() ||
        in.truth[t].size() != in.masks[t].size()) {
      throw std::invalid_argument("metrics: dimension mismatch at frame " + std::to_string(t));
    }
  }
  if (!(in.eps_metric > 0.0)) throw std::invalid_argument("metrics: eps_metric must be > 0");
}

struct PooledAccumulator {
  double abs_sum = 0.0;
  double sq_sum = 0.0;
  double truth_abs_sum = 0.0;
  std::int64_t count = 0;

  void add(double truth, double imputed) {
    const double diff = imputed - truth;
    abs_sum += std::fabs(diff);
    sq_sum += diff * diff;
    truth_abs_sum += std::fabs(truth);
    count += 1;
  }
};

}  // namespace

OverallMetrics overall_metrics(const EvalInput& input) {
  check_shapes(input);
  PooledAccumulator acc;
  for (std::size_t t = 0; t < input.truth.size(); ++t) {
    for (Index j : input.masks[t].missing_indices()) {
      acc.add(input.truth[t][j], input.imputed[t][j]);
    }
  }
  if (acc.count == 0) throw std::runtime_error("overall_metrics: no missing entries");
  OverallMetrics out;
  out.mae = acc.abs_sum / static_cast<double>(acc.count);
  out.rmse = std::sqrt(acc.sq_sum / static_cast<double>(acc.count));
  out.wmape = acc.abs_sum / (acc.truth_abs_sum + input.eps_metric);
  return out;
}

IndexList burst_set(const Vector& frame, const BurstConfig& cfg) {
  const Index d = frame.size();
  if (d < 2) throw std::invalid_argument("burst_set: dominance ratio needs d >= 2");
  if (!(cfg.alpha > 1.0) || !(cfg.beta > 0.0) || !(cfg.beta < 1.0)) {
    throw std::invalid_argument("burst_set: need alpha > 1 and beta in (0,1)");
  }
  IndexList out;
  for (Index k = 0; k < d; ++k) {
    Index dominated = 0;
    for (Index l = 0; l < d; ++l) {
      if (l != k && frame[k] >= cfg.alpha * frame[l]) ++dominated;
    }
    if (static_cast<double>(dominated) / static_cast<double>(d - 1) >= cfg.beta) {
      out.push_back(k);
    }
  }
  return out;
}

namespace {

// True and predicted missing burst sets of one frame (sorted).
std::pair<IndexList, IndexList> missing_burst_sets(const EvalInput& in, std::size_t t,
                                                   const BurstConfig& cfg) {
  const auto& missing = in.masks[t].missing_indices();
  const auto intersect_missing = [&missing](const IndexList& bursts) {
    IndexList out;
    std::set_intersection(bursts.begin(), bursts.end(), missing.begin(), missing.end(),
                          std::back_inserter(out));
    return out;
  };
  return {intersect_missing(burst_set(in.truth[t], cfg)),
          intersect_missing(burst_set(in.imputed[t], cfg))};
}

}  // namespace

DetectionMetrics burst_detection(const EvalInput& input, const BurstConfig& cfg) {
  check_shapes(input);
  double tp = 0.0, pred = 0.0, truth = 0.0;
  for (std::size_t t = 0; t < input.truth.size(); ++t) {
    const auto [true_set, pred_set] = missing_burst_sets(input, t, cfg);
    IndexList common;
    std::set_intersection(true_set.begin(), true_set.end(), pred_set.begin(), pred_set.end(),
                          std::back_inserter(common));
    tp += static_cast<double>(common.size());
    pred += static_cast<double>(pred_set.size());
    truth += static_cast<double>(true_set.size());
  }
  DetectionMetrics out;
  out.precision = tp / (pred + input.eps_metric);
  out.recall = tp / (truth + input.eps_metric);
  out.f1 = 2.0 * out.precision * out.recall / (out.precision + out.recall + input.eps_metric);
  return out;
}

BurstAccuracy burst_metrics(const EvalInput& input, const BurstConfig& cfg) {
  check_shapes(input);
  PooledAccumulator acc;
  for (std::size_t t = 0; t < input.truth.size(); ++t) {
    const auto [true_set, pred_set] = missing_burst_sets(input, t, cfg);
    (void)pred_set;
    for (Index j : true_set) acc.add(input.truth[t][j], input.imputed[t][j]);
  }
  BurstAccuracy out;
  if (acc.count == 0) return out;  // not applicable
  out.applicable = true;
  out.mae = acc.abs_sum / static_cast<double>(acc.count);
  out.rmse = std::sqrt(acc.sq_sum / static_cast<double>(acc.count));
  out.wmape = acc.abs_sum / (acc.truth_abs_sum + input.eps_metric);
  return out;
}

double picp(const EvalInput& input, double level) {
  check_shapes(input);
  if (input.intervals == nullptr) throw std::runtime_error("picp: no intervals provided");
  (void)level;
  std::map<std::pair<Index, Index>, const IntervalRecord*> lookup;
  for (const IntervalRecord& rec : *input.intervals) {
    lookup[{rec.frame, rec.flow}] = &rec;
  }
  std::int64_t covered = 0, total = 0;
  for (std::size_t t = 0; t < input.truth.size(); ++t) {
    for (Index j : input.masks[t].missing_indices()) {
      const auto it = lookup.find({static_cast<Index>(t), j});
      if (it == lookup.end()) {
        throw std::runtime_error("picp: missing interval for frame " + std::to_string(t) +
                                 " flow " + std::to_string(j));
      }
      const double x = input.truth[t][j];
      if (it->second->lower <= x && x <= it->second->upper) ++covered;
      ++total;
    }
  }
  if (total == 0) throw std::runtime_error("picp: no missing entries");
  return static_cast<double>(covered) / static_cast<double>(total);
}

MetricsSummary evaluate_all(const EvalInput& input, const BurstConfig& cfg, double level) {
  MetricsSummary s;
  s.overall = overall_metrics(input);
  s.detection = burst_detection(input, cfg);
  s.burst = burst_metrics(input, cfg);
  if (input.intervals != nullptr) s.picp_value = picp(input, level);
  for (std::size_t t = 0; t < input.masks.size(); ++t) {
    s.missing_entries += input.masks[t].num_missing();
    const auto [true_set, pred_set] = missing_burst_sets(input, t, cfg);
    (void)pred_set;
    s.burst_missing_entries += static_cast<std::int64_t>(true_set.size());
  }
  return s;
}

std::string metrics_report_json(const MetricsSummary& s) {
  nlohmann::json burst;
  burst["precision"] = s.detection.precision;
  burst["recall"] = s.detection.recall;
  burst["f1"] = s.detection.f1;
  if (s.burst.applicable) {
    burst["mae"] = s.burst.mae;
    burst["rmse"] = s.burst.rmse;
    burst["wmape"] = s.burst.wmape;
  } else {
    burst["mae"] = nullptr;
    burst["rmse"] = nullptr;
    burst["wmape"] = nullptr;
  }
  nlohmann::json j;
  j["mae"] = s.overall.mae;
  j["rmse"] = s.overall.rmse;
  j["wmape"] = s.overall.wmape;
  j["burst"] = burst;
  if (s.picp_value.has_value()) j["picp"] = *s.picp_value;
  j["missing_entries"] = s.missing_entries;
  j["burst_missing_entries"] = s.burst_missing_entries;
  return j.dump(2) + "\n";
}

}  // namespace utimac
