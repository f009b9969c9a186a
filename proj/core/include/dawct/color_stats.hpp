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
#include <vector>

#include "dawct/linalg.hpp"
#include "dawct/tensor.hpp"

namespace dawct {

// Global color characteristics of one image:
//   [0..2] channel means (R, G, B)
//   [3..5] channel population standard deviations
//   [6]    mean(B) / max(mean(R), 1e-4)
//   [7]    mean(G) / max(mean(R), 1e-4)
struct ColorSignature {
  static constexpr std::size_t kSize = 8;
  std::array<double, kSize> values{};
};

inline constexpr double kRatioFloor = 1e-4;

ColorSignature color_signature(const ImageBuffer& img);

struct PcaResult {
  Matrix components;                         // 8 x n_components, columns are axes
  std::vector<double> explained_variance_ratio;  // n_components, non-increasing
  Matrix projections;                        // n_signatures x n_components
  std::vector<double> mean;                  // per-dimension mean
  std::vector<double> scale;                 // per-dimension std (1 where zero)
};

// Z-scores each dimension (sample std; constant dimensions are only
// centered), then eigendecomposes the covariance with sym_eigen.
PcaResult pca(const std::vector<ColorSignature>& signatures, std::size_t n_components);

}  // namespace dawct
