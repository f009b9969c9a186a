// Copyright 2026 The dawct Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dawct/depth_guidance.hpp"
#include "dawct/guided_filter.hpp"
#include "dawct/linalg.hpp"
#include "dawct/tensor.hpp"
#include "dawct/waterbody.hpp"

namespace dawct {

struct DawctConfig {
  double alpha = 1.0;
  std::vector<double> scales{1.0, 0.75, 0.5, 0.25};
  // Empty means uniform over `scales`.
  std::vector<double> scale_weights;
  DepthGuidanceConfig depth;
  // Relative eigenvalue floor, see regularization_eps.
  double eps = 1e-5;
  bool use_waterbody_mask = true;
  bool apply_guided_filter = true;
  GifParams gif;
  int patch_radius = 0;
  double far_fraction = 0.05;
  double bg_margin = 0.0;

  void validate() const;
  std::vector<double> effective_scale_weights() const;
};

struct ScaleTrace {
  double scale = 1.0;
  int height = 0;
  int width = 0;
  DepthGuidanceParams depth;
};

struct FusionTrace {
  std::vector<ScaleTrace> scales;
};

struct StylizeTrace {
  FusionTrace fusion;
  std::optional<WaterbodyEstimate> waterbody;
  std::size_t mask_pixels = 0;
  // Wall-clock milliseconds per pipeline stage.
  std::map<std::string, double> timings_ms;
};

// mu_s + C_s^{1/2} C_c^{-1/2} (f_c - mu_c). `eps` is relative; each
// covariance gets its own floor via regularization_eps.
FeatureTensor wct_transfer(const FeatureTensor& f_c, const StyleStats& stats_c,
                           const StyleStats& stats_s, double eps = 1e-5);

// w * f_tilde + (1 - w) * f_c; w is bilinearly resampled when its
// dimensions differ from the tensors'.
FeatureTensor depth_blend(const FeatureTensor& f_tilde, const FeatureTensor& f_c,
                          const WeightMap& w);

// alpha * f_depth + (1 - alpha) * f_c.
FeatureTensor alpha_blend(const FeatureTensor& f_depth, const FeatureTensor& f_c, double alpha);

// One DA-WCT pass at the resolution of f_c. d_c is resampled to f_c's
// dimensions when needed. Style statistics come from the waterbody mask
// when `wb` is given and cfg.use_waterbody_mask is set.
FeatureTensor dawct_single_scale(const FeatureTensor& f_c, const FeatureTensor& f_s,
                                 const DepthMap& d_c, const WaterbodyEstimate* wb,
                                 const DawctConfig& cfg, ScaleTrace* trace = nullptr);

// Runs dawct_single_scale at every configured scale and combines the
// per-scale results with `scale_weights`. A scale's full-resolution result
// is f_c + upsample(fused_s - downsample_s(f_c)), so content detail is not
// lost to resampling and alpha = 0 returns f_c exactly. With a single scale
// the single-scale output is returned unchanged. Accumulation runs in
// scale order.
FeatureTensor dawct_multiscale(const FeatureTensor& f_c, const FeatureTensor& f_s,
                               const DepthMap& d_c, const WaterbodyEstimate* wb,
                               const DawctConfig& cfg, FusionTrace* trace = nullptr);

// Pixel-mode pipeline: features, waterbody estimation, multi-scale fusion,
// decoding, clamping and guided filtering with the content as guide.
ImageBuffer stylize(const ImageBuffer& content, const ImageBuffer& style, const DepthMap& d_c,
                    const DepthMap& d_s, const DawctConfig& cfg, StylizeTrace* trace = nullptr);

}  // namespace dawct
