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

#include <vector>

#include "dawct/tensor.hpp"

namespace dawct {

// Bilinear resampling with pixel-center alignment: output sample x maps to
// source coordinate (x + 0.5) * src / dst - 0.5, clamped to the border.
// Resizing to the current size returns an exact copy. Interpolation uses
// std::lerp, so constants are reproduced exactly and values never leave the
// range spanned by their neighbours.
Plane resize_bilinear(const Plane& src, int new_height, int new_width);
ImageBuffer resize_bilinear(const ImageBuffer& src, int new_height, int new_width);
DepthMap resize_bilinear(const DepthMap& src, int new_height, int new_width);
WeightMap resize_bilinear(const WeightMap& src, int new_height, int new_width);
FeatureTensor resize_bilinear(const FeatureTensor& src, int new_height, int new_width);

// Nearest-neighbour resampling for masks (same center alignment).
BinaryMask resize_nearest(const BinaryMask& src, int new_height, int new_width);

// round-half-up(ratio * n), floored at 1.
int scaled_dim(int n, double ratio);

// One tensor per ratio in (0, 1]; ratio 1.0 yields the input itself.
std::vector<FeatureTensor> build_scale_set(const FeatureTensor& t,
                                           const std::vector<double>& scales);

}  // namespace dawct
