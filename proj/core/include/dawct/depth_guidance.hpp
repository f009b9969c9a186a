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

#include <optional>

#include "dawct/tensor.hpp"

namespace dawct {

// User-facing knobs; derive_depth_params turns them into concrete values
// for one content depth map.
struct DepthGuidanceConfig {
  double k_base = 10.0;
  double k_eps = 0.05;
  int pool_kernel = 5;
  int otsu_bins = 256;
  std::optional<double> tau_override;
  // true: farther pixels get w -> 1. false: the exponent sign of the
  // printed sigmoid, farther pixels get w -> 0.
  bool farther_is_styled = true;

  void validate() const;
};

struct DepthGuidanceParams {
  double tau = 0.5;
  double k = 1.0;
  double mu_d = 0.0;
  double sigma_d = 0.0;
  int pool_kernel = 5;
  bool farther_is_styled = true;

  void validate() const;
};

// Otsu threshold over `bins` uniform bins on [0, 1]. Returns (t + 1) / bins
// for the split after bin t that maximizes between-class variance (first
// maximum wins). When every split has zero between-class variance the mean
// depth is returned (the value itself for a constant map).
double otsu_threshold(const DepthMap& d, int bins = 256);

struct PooledDepthStats {
  double mu_d = 0.0;
  double sigma_d = 0.0;  // population standard deviation
};

// Mean and standard deviation of the stride-1, edge-replicated moving
// average of `d` with an odd `kernel`.
PooledDepthStats avgpool_stats(const DepthMap& d, int kernel);

// k = k_base / (sigma_d + eps).
double adaptive_k(double sigma_d, double k_base, double eps);

DepthGuidanceParams derive_depth_params(const DepthMap& d, const DepthGuidanceConfig& cfg);

// w(x) = 1 / (1 + exp(-k (D(x) - tau))) (sign flipped when
// !farther_is_styled), kept strictly inside (0, 1).
WeightMap depth_weight_map(const DepthMap& d, const DepthGuidanceParams& params);

}  // namespace dawct
