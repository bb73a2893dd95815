// utimac/types.hpp

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

#ifndef UTIMAC_TYPES_HPP
#define UTIMAC_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace utimac {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;
using IndexList = std::vector<Index>;

/// One time slot of vectorized origin-destination traffic volumes.
struct TrafficFrame {
  std::int64_t t = 0;
  Vector x;  // d non-negative volumes, fixed vectorization order

  Index dim() const { return x.size(); }
};

/// Per-frame binary observability of each flow entry. Immutable after
/// construction; the observed/missing index sets are precomputed.
class ObservationMask {
 public:
  ObservationMask() = default;

  explicit ObservationMask(std::vector<bool> bits) : bits_(std::move(bits)) {
    obs_.reserve(bits_.size());
    for (Index j = 0; j < static_cast<Index>(bits_.size()); ++j) {
      if (bits_[static_cast<std::size_t>(j)]) {
        obs_.push_back(j);
      } else {
        mis_.push_back(j);
      }
    }
  }

  static ObservationMask all_observed(Index d) {
    return ObservationMask(std::vector<bool>(static_cast<std::size_t>(d), true));
  }

  Index size() const { return static_cast<Index>(bits_.size()); }
  bool observed(Index j) const { return bits_[static_cast<std::size_t>(j)]; }
  Index num_observed() const { return static_cast<Index>(obs_.size()); }
  Index num_missing() const { return static_cast<Index>(mis_.size()); }
  bool fully_observed() const { return mis_.empty(); }

  const IndexList& observed_indices() const { return obs_; }
  const IndexList& missing_indices() const { return mis_; }

 private:
  std::vector<bool> bits_;
  IndexList obs_;
  IndexList mis_;
};

struct MaskedFrame {
  TrafficFrame frame;
  ObservationMask mask;
};

/// A block of frames sharing one parameter set, plus the strictly positive
/// log-transform offsets.
struct TrafficWindow {
  std::vector<MaskedFrame> frames;
  Vector eps;  // d strictly positive offsets

  Index length() const { return static_cast<Index>(frames.size()); }
  Index dim() const { return frames.empty() ? eps.size() : frames.front().frame.dim(); }
};

/// The shared per-window triple (mu, sigma, lambda) together with the
/// regularizer weights used by the fitting objective.
struct WindowParams {
  Vector mu;
  Matrix sigma;
  double lambda = 1.0;
  double rho = 1e-2;
  double eta = 1.0;
};

/// Per-frame deviation vectors, each living on that frame's observed index
/// set (same ordering as ObservationMask::observed_indices()).
struct DeviationSet {
  std::vector<Vector> o;

  static DeviationSet zeros(const TrafficWindow& w) {
    DeviationSet d;
    d.o.reserve(w.frames.size());
    for (const auto& mf : w.frames) {
      d.o.emplace_back(Vector::Zero(mf.mask.num_observed()));
    }
    return d;
  }
};

}  // namespace utimac

#endif  // UTIMAC_TYPES_HPP
