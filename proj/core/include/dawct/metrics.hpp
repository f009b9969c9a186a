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

#include <limits>

#include "dawct/tensor.hpp"

namespace dawct {

struct SsimParams {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
};

// Mean SSIM over the valid-window positions of the luma planes, dynamic
// range 1. The window shrinks to the largest odd size that fits.
double ssim(const ImageBuffer& a, const ImageBuffer& b, const SsimParams& params = {});
double ssim(const Plane& a, const Plane& b, const SsimParams& params = {});

// Gradient magnitude similarity deviation on luma: Prewitt gradients with
// edge replication, c = 0.0026, population standard deviation of the
// similarity map.
double gmsd(const ImageBuffer& a, const ImageBuffer& b);

struct MetricReport {
  double rmse = 0.0;  // 0-255 scale
  double psnr = std::numeric_limits<double>::infinity();
  double ssim = 1.0;
  double gmsd = 0.0;
};

// RMSE over all channels on the 8-bit scale; +infinity when rmse == 0.
double rmse_255(const ImageBuffer& a, const ImageBuffer& b);
double psnr_from_rmse(double rmse);

// When `resample_b` is set, b is bilinearly resampled to a's dimensions;
// otherwise mismatched dimensions throw InvalidArgument.
MetricReport evaluate(const ImageBuffer& a, const ImageBuffer& b, bool resample_b = false);

}  // namespace dawct
