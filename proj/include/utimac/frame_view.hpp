// utimac/frame_view.hpp

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

#ifndef UTIMAC_FRAME_VIEW_HPP
#define UTIMAC_FRAME_VIEW_HPP

#include "utimac/transform.hpp"
#include "utimac/types.hpp"

namespace utimac {

/// Log-domain view of one frame: precomputed observed/missing index sets
/// and the observed log-domain subvector.
struct FrameView {
  const IndexList* obs = nullptr;
  const IndexList* mis = nullptr;
  Vector z_obs;
};

inline std::vector<FrameView> build_frame_views(const TrafficWindow& w) {
  std::vector<FrameView> views;
  views.reserve(w.frames.size());
  for (const auto& mf : w.frames) {
    FrameView v;
    v.obs = &mf.mask.observed_indices();
    v.mis = &mf.mask.missing_indices();
    const Vector z = to_log_domain(mf.frame, w.eps);
    v.z_obs = subvector(z, *v.obs);
    views.push_back(std::move(v));
  }
  return views;
}

}  // namespace utimac

#endif  // UTIMAC_FRAME_VIEW_HPP
