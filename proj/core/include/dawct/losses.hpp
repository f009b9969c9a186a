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
#include <optional>
#include <span>

#include "dawct/tensor.hpp"

namespace dawct {

// Every squared-norm loss here is a per-element mean.
double mse_loss(const ImageBuffer& a, const ImageBuffer& b);
double mse_loss(const FeatureTensor& a, const FeatureTensor& b);

// 1 - SSIM on luma (11-tap Gaussian, sigma 1.5).
double ssim_loss(const ImageBuffer& a, const ImageBuffer& b);

// sRGB (D65) -> CIELAB.
std::array<double, 3> srgb_to_lab(const std::array<double, 3>& rgb);

// Mean squared difference over L*, a*, b* of every pixel.
double lab_color_loss(const ImageBuffer& a, const ImageBuffer& b);

// Per channel, 2-D DFT with 1/(H*W) forward normalization; mean squared
// difference of the magnitude spectra over all bins and channels.
double fft_loss(const ImageBuffer& a, const ImageBuffer& b);

// 1 - cosine similarity, in [0, 2].
double clip_loss(std::span<const double> emb_a, std::span<const double> emb_b);

// Mean squared elementwise difference of externally supplied tensors
// (feature and perceptual distances).
double tensor_l2_loss(const FeatureTensor& a, const FeatureTensor& b);

struct LossReport {
  std::optional<double> l_r;
  std::optional<double> l_ssim;
  std::optional<double> l_color;
  std::optional<double> l_fft;
  std::optional<double> l_clip;
  std::optional<double> l_feat;
  std::optional<double> l_percept;
};

struct AggregateLoss {
  double l0 = 0.0;
  std::optional<double> lN;  // stages 1-4 only
};

// l0 = l_r + l_ssim + l_color + l_fft + l_clip; for stage >= 1,
// lN = l0 + l_feat + l_percept. Throws MissingComponent naming the first
// absent term the stage needs.
AggregateLoss aggregate_losses(const LossReport& report, int stage);

}  // namespace dawct
