// utimac/datagen.hpp
//
// Synthetic data from the generative model: per frame U ~ N(mu, Sigma),
// O with i.i.d. Laplace(0, 1/lambda) coordinates, Z = U + O and
// X = max(exp(Z) - eps, 0). Traffic and masks use two independent seeded
// streams so one fixed-seed mask can be shared across traffic draws.

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

#ifndef UTIMAC_DATAGEN_HPP
#define UTIMAC_DATAGEN_HPP

#include <cstdint>

#include "utimac/types.hpp"

namespace utimac {

struct SynthSpec {
  Index d = 0;
  Index L = 0;
  int n_windows = 1;
  Vector mu;
  Matrix sigma;
  double lambda = 1.0;
  Vector eps;
  std::uint64_t seed = 0;
};

struct MaskSpec {
  double p_obs = 1.0;  // in (0, 1]
  std::uint64_t seed = 0;
};

/// A sampled window with its ground-truth latents (rows = frames).
struct SampledWindow {
  TrafficWindow window;  // frames carry all-observed masks
  Matrix u;
  Matrix o;
  Matrix z;
  std::int64_t clamped = 0;  // entries clamped at zero by the inverse transform
};

/// lambda >= 1e12 is treated as the no-deviation limit (O = 0).
/// `window_index` selects the per-window derived stream and offsets the
/// frame time indices by window_index * L.
SampledWindow sample_window(const SynthSpec& spec, int window_index = 0);

/// i.i.d. Bernoulli(p_obs) per entry per frame, deterministic in the seed.
std::vector<ObservationMask> sample_masks(Index d, Index n_frames, const MaskSpec& spec);

/// Random PD matrix with exactly unit diagonal (normalized Wishart plus
/// a small ridge); convenient for tests and the simulator.
Matrix random_correlation(Index d, std::uint64_t seed);

}  // namespace utimac

#endif  // UTIMAC_DATAGEN_HPP
