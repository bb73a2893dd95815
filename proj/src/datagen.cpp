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

#include "utimac/datagen.hpp"

#include <cmath>
#include <stdexcept>

#include "utimac/rng.hpp"

namespace utimac {

namespace {
constexpr double kLambdaNoDeviation = 1e12;
constexpr std::uint64_t kTrafficStream = 0x7472616666696355ull;
constexpr std::uint64_t kMaskStream = 0x6d61736b73747265ull;
}  // namespace

SampledWindow sample_window(const SynthSpec& spec, int window_index) {
  if (spec.d < 1 || spec.L < 1) throw std::invalid_argument("sample_window: d, L must be >= 1");
  if (spec.mu.size() != spec.d || spec.eps.size() != spec.d) {
    throw std::invalid_argument("sample_window: mu/eps dimension mismatch");
  }
  if (!(spec.lambda > 0.0)) throw std::invalid_argument("sample_window: lambda must be > 0");
  Eigen::LLT<Matrix> llt(spec.sigma);
  if (spec.sigma.rows() != spec.d || llt.info() != Eigen::Success) {
    throw std::invalid_argument("sample_window: sigma is not positive definite");
  }
  const Matrix chol = llt.matrixL();
  const bool no_deviation = spec.lambda >= kLambdaNoDeviation;
  const double b = 1.0 / spec.lambda;

  CounterRng rng(derive_stream(derive_stream(spec.seed, kTrafficStream),
                               static_cast<std::uint64_t>(window_index)));
  SampledWindow out;
  out.u.resize(spec.L, spec.d);
  out.o.resize(spec.L, spec.d);
  out.z.resize(spec.L, spec.d);
  out.window.eps = spec.eps;
  out.window.frames.reserve(static_cast<std::size_t>(spec.L));

  Vector xi(spec.d);
  for (Index i = 0; i < spec.L; ++i) {
    for (Index j = 0; j < spec.d; ++j) xi[j] = rng.next_normal();
    const Vector u = spec.mu + chol * xi;
    Vector o(spec.d);
    for (Index j = 0; j < spec.d; ++j) o[j] = no_deviation ? 0.0 : rng.next_laplace(b);
    const Vector z = u + o;
    Vector x(spec.d);
    for (Index j = 0; j < spec.d; ++j) {
      const double v = std::exp(z[j]) - spec.eps[j];
      if (v < 0.0) {
        x[j] = 0.0;
        ++out.clamped;
      } else {
        x[j] = v;
      }
    }
    out.u.row(i) = u;
    out.o.row(i) = o;
    out.z.row(i) = z;
    MaskedFrame mf;
    mf.frame.t = static_cast<std::int64_t>(window_index) * spec.L + i;
    mf.frame.x = std::move(x);
    mf.mask = ObservationMask::all_observed(spec.d);
    out.window.frames.push_back(std::move(mf));
  }
  return out;
}

std::vector<ObservationMask> sample_masks(Index d, Index n_frames, const MaskSpec& spec) {
  if (!(spec.p_obs > 0.0) || spec.p_obs > 1.0) {
    throw std::invalid_argument("sample_masks: p_obs must be in (0,1]");
  }
  CounterRng rng(derive_stream(spec.seed, kMaskStream));
  std::vector<ObservationMask> masks;
  masks.reserve(static_cast<std::size_t>(n_frames));
  for (Index t = 0; t < n_frames; ++t) {
    std::vector<bool> bits(static_cast<std::size_t>(d));
    for (Index j = 0; j < d; ++j) bits[static_cast<std::size_t>(j)] = rng.next_bernoulli(spec.p_obs);
    masks.emplace_back(std::move(bits));
  }
  return masks;
}

Matrix random_correlation(Index d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_correlation: d must be >= 1");
  CounterRng rng(derive_stream(seed, 0x636f7272ull));
  // Wishart with 3d degrees of freedom plus a ridge: moderate pairwise
  // correlations rather than a near-singular draw.
  const Index k = 3 * d;
  Matrix w(d, k);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < k; ++j) w(i, j) = rng.next_normal();
  }
  Matrix c = w * w.transpose() / static_cast<double>(k) +
             0.1 * Matrix::Identity(d, d);
  const Vector scale = c.diagonal().array().sqrt().inverse();
  return scale.asDiagonal() * c * scale.asDiagonal();
}

}  // namespace utimac
