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

#include "utimac/transform.hpp"

#include <cmath>
#include <string>

namespace utimac {

Vector to_log_domain(const TrafficFrame& frame, const Vector& eps) {
  const Index d = frame.dim();
  if (eps.size() != d) {
    throw std::domain_error("to_log_domain: eps dimension " + std::to_string(eps.size()) +
                            " does not match frame dimension " + std::to_string(d));
  }
  Vector z(d);
  for (Index k = 0; k < d; ++k) {
    const double xv = frame.x[k];
    if (!std::isfinite(xv) || xv < 0.0) {
      throw std::domain_error("to_log_domain: traffic entry " + std::to_string(k) +
                              " is negative or non-finite");
    }
    if (!(eps[k] > 0.0)) {
      throw std::domain_error("to_log_domain: offset entry " + std::to_string(k) +
                              " must be strictly positive");
    }
    z[k] = std::log(xv + eps[k]);
  }
  return z;
}

InverseTransformResult from_log_domain(const Vector& z, const Vector& eps, double max_value) {
  if (eps.size() != z.size()) {
    throw std::domain_error("from_log_domain: eps/z dimension mismatch");
  }
  InverseTransformResult res;
  res.x.resize(z.size());
  for (Index k = 0; k < z.size(); ++k) {
    if (!std::isfinite(z[k])) {
      throw std::domain_error("from_log_domain: non-finite log value at entry " +
                              std::to_string(k));
    }
    double v = std::exp(z[k]) - eps[k];
    if (!std::isfinite(v) || v > max_value) {
      v = max_value;
      res.saturated = true;
    }
    res.x[k] = v < 0.0 ? 0.0 : v;  // traffic is non-negative
  }
  return res;
}

std::vector<TrafficWindow> partition_windows(const std::vector<MaskedFrame>& series,
                                             Index window_len, const Vector& eps) {
  if (window_len < 1) {
    throw std::invalid_argument("partition_windows: window_len must be >= 1");
  }
  std::vector<TrafficWindow> windows;
  if (series.empty()) return windows;
  windows.reserve((series.size() + static_cast<std::size_t>(window_len) - 1) /
                  static_cast<std::size_t>(window_len));
  for (std::size_t start = 0; start < series.size();
       start += static_cast<std::size_t>(window_len)) {
    TrafficWindow w;
    w.eps = eps;
    const std::size_t end =
        std::min(series.size(), start + static_cast<std::size_t>(window_len));
    w.frames.assign(series.begin() + static_cast<std::ptrdiff_t>(start),
                    series.begin() + static_cast<std::ptrdiff_t>(end));
    windows.push_back(std::move(w));
  }
  return windows;
}

Matrix submatrix(const Matrix& sigma, const IndexList& rows, const IndexList& cols) {
  Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0 || rows[i] >= sigma.rows()) {
      throw std::out_of_range("submatrix: row index " + std::to_string(rows[i]) +
                              " out of range");
    }
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j] < 0 || cols[j] >= sigma.cols()) {
        throw std::out_of_range("submatrix: col index " + std::to_string(cols[j]) +
                                " out of range");
      }
      out(static_cast<Index>(i), static_cast<Index>(j)) = sigma(rows[i], cols[j]);
    }
  }
  return out;
}

Vector subvector(const Vector& v, const IndexList& idx) {
  Vector out(static_cast<Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= v.size()) {
      throw std::out_of_range("subvector: index " + std::to_string(idx[i]) + " out of range");
    }
    out[static_cast<Index>(i)] = v[idx[i]];
  }
  return out;
}

}  // namespace utimac
