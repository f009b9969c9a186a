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

#include "dawct/tensor.hpp"

namespace dawct {

// Pixel-mode features: for every offset (dy, dx) in the (2r+1)^2 window,
// in row-major offset order, the three image channels shifted by that
// offset with edge replication. Channel index = offset_index * 3 + c.
// Radius 0 yields the raw RGB channels.
FeatureTensor extract_pixel_features(const ImageBuffer& img, int patch_radius);

// Index of the first zero-offset channel for a given radius.
int center_channel_offset(int patch_radius);

// Inverse of extract_pixel_features: takes the zero-offset channels and
// clamps them to [0, 1].
ImageBuffer decode_pixel_features(const FeatureTensor& t, int patch_radius);

}  // namespace dawct
