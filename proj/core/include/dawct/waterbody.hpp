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
#include <string_view>

#include "dawct/linalg.hpp"
#include "dawct/tensor.hpp"

namespace dawct {

// Which rule produced the waterbody mask, in fallback order.
enum class MaskSource {
  kFarBluishGreen,         // bluish-green AND within the far_fraction farthest
  kRelaxedFarBluishGreen,  // same with 4 * far_fraction
  kBluishGreen,            // color filter alone
  kFullImage,              // every pixel
};

std::string_view to_string(MaskSource s) noexcept;

struct WaterbodyEstimate {
  std::array<double, 3> background_color{};  // B_s
  BinaryMask mask;
  double far_fraction = 0.05;
  MaskSource source = MaskSource::kFarBluishGreen;
};

// Number of pixels in the farthest `fraction` of n pixels: ceil(fraction * n).
std::size_t far_pixel_count(double fraction, std::size_t n);

// Per-channel lower median of the colors of the ceil(far_fraction * H * W)
// deepest pixels. Equal depths are ordered row-major.
std::array<double, 3> estimate_background(const ImageBuffer& style, const DepthMap& depth_s,
                                          double far_fraction);

// Keeps pixels with B >= R + margin and G >= R + margin.
BinaryMask bluish_green_mask(const ImageBuffer& style, double margin = 0.0);

// Background color plus the waterbody mask, with the fallback chain of
// MaskSource.
WaterbodyEstimate estimate_waterbody(const ImageBuffer& style, const DepthMap& depth_s,
                                     double far_fraction = 0.05, double margin = 0.0);

// Style statistics restricted to the waterbody mask (nearest-neighbour
// resampled to the feature resolution). Falls back to full-image
// statistics, with a warning, when fewer than 2 pixels survive.
StyleStats waterbody_stats(const FeatureTensor& style_features, const WaterbodyEstimate& estimate);

}  // namespace dawct
