// utimac/transform.hpp

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

#ifndef UTIMAC_TRANSFORM_HPP
#define UTIMAC_TRANSFORM_HPP

#include "utimac/types.hpp"

namespace utimac {

/// Saturation value used when exp() overflows in the inverse transform.
inline constexpr double kSaturationMax = 1e300;

/// Elementwise z_k = ln(x_k + eps_k). Rejects negative or non-finite
/// traffic and non-positive offsets with std::domain_error.
Vector to_log_domain(const TrafficFrame& frame, const Vector& eps);

struct InverseTransformResult {
  Vector x;
  bool saturated = false;  // some entry hit the overflow cap
};

/// Elementwise max(exp(z_k) - eps_k, 0). Overflowing entries saturate to
/// `max_value` and set the flag.
InverseTransformResult from_log_domain(const Vector& z, const Vector& eps,
                                       double max_value = kSaturationMax);

/// Consecutive non-overlapping windows of `window_len` frames; a shorter
/// remainder becomes the final window. Empty input gives an empty list.
std::vector<TrafficWindow> partition_windows(const std::vector<MaskedFrame>& series,
                                             Index window_len, const Vector& eps);

/// sigma[rows, cols]; stands in for explicit selection-matrix products.
Matrix submatrix(const Matrix& sigma, const IndexList& rows, const IndexList& cols);

Vector subvector(const Vector& v, const IndexList& idx);

}  // namespace utimac

#endif  // UTIMAC_TRANSFORM_HPP
