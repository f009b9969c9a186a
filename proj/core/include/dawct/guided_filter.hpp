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

struct GifParams {
  int radius = 8;
  double epsilon = 1e-3;  // on the [0, 1] intensity scale

  void validate() const;
};

// Mean over the (2r+1)^2 window with edge replication. Separable: rows
// first, then columns; radius 0 is the identity.
Plane box_filter(const Plane& src, int radius);

// Rec.601 luma, 0.299 R + 0.587 G + 0.114 B.
Plane luma(const ImageBuffer& img);

// Guided filter with a grayscale (luma) guide, applied to each channel of
// `input`:
//   a = cov(I, p) / (var(I) + eps),  b = mean(p) - a * mean(I)
//   q = mean(a) * I + mean(b)
// where every mean is a box_filter of `params.radius`. Windows with
// var(I) + eps == 0 use a = 0. Output is clamped to [0, 1].
ImageBuffer guided_filter(const ImageBuffer& input, const ImageBuffer& guide,
                          const GifParams& params);

// Same filter on a single channel with an explicit guide plane.
Plane guided_filter(const Plane& input, const Plane& guide, const GifParams& params);

}  // namespace dawct
