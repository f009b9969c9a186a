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

#include "dawct/depth_guidance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dawct/error.hpp"
#include "dawct/guided_filter.hpp"

namespace dawct {
namespace {

void check_kernel(int kernel) {
  if (kernel < 1 || kernel % 2 == 0) {
    throw InvalidArgument("pool kernel must be odd and >= 1, got " + std::to_string(kernel));
  }
}

}  // namespace

void DepthGuidanceConfig::validate() const {
  if (!(k_base > 0.0)) throw InvalidArgument("k_base must be positive");
  if (!(k_eps > 0.0)) throw InvalidArgument("k eps must be positive");
  check_kernel(pool_kernel);
  if (otsu_bins < 2) throw InvalidArgument("Otsu bins must be >= 2");
  if (tau_override && !(*tau_override >= 0.0 && *tau_override <= 1.0)) {
    throw InvalidArgument("tau override must lie in [0,1]");
  }
}

void DepthGuidanceParams::validate() const {
  if (!(tau >= 0.0 && tau <= 1.0)) throw InvalidArgument("tau must lie in [0,1]");
  if (!(k > 0.0)) throw InvalidArgument("k must be positive");
  if (!(sigma_d >= 0.0)) throw InvalidArgument("sigma_d must be >= 0");
  check_kernel(pool_kernel);
}

double otsu_threshold(const DepthMap& d, int bins) {
  if (bins < 2) throw InvalidArgument("otsu_threshold: bins must be >= 2");
  if (d.size() == 0) throw InvalidArgument("otsu_threshold: empty depth map");

  std::vector<double> hist(static_cast<std::size_t>(bins), 0.0);
  for (double v : d.values()) {
    const int b = std::min(static_cast<int>(v * bins), bins - 1);
    hist[b] += 1.0;
  }
  const double total = static_cast<double>(d.size());
  double total_sum = 0.0;
  for (int b = 0; b < bins; ++b) total_sum += hist[b] * ((b + 0.5) / bins);

  double best = 0.0;
  int best_split = -1;
  double w0 = 0.0;
  double sum0 = 0.0;
  for (int t = 0; t + 1 < bins; ++t) {
    w0 += hist[t];
    sum0 += hist[t] * ((t + 0.5) / bins);
    const double w1 = total - w0;
    if (w0 == 0.0 || w1 == 0.0) continue;
    const double mu0 = sum0 / w0;
    const double mu1 = (total_sum - sum0) / w1;
    const double between = (w0 / total) * (w1 / total) * (mu0 - mu1) * (mu0 - mu1);
    if (between > best) {
      best = between;
      best_split = t;
    }
  }
  if (best_split >= 0) return static_cast<double>(best_split + 1) / bins;

  const auto v = d.values();
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  if (*lo == *hi) return *lo;
  double s = 0.0;
  for (double x : v) s += x;
  return std::clamp(s / total, 0.0, 1.0);
}

PooledDepthStats avgpool_stats(const DepthMap& d, int kernel) {
  check_kernel(kernel);
  const Plane pooled = box_filter(d.plane(), kernel / 2);
  const auto v = pooled.values();
  const double n = static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += x;
  const double mu = s / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mu) * (x - mu);
  return {mu, std::sqrt(ss / n)};
}

double adaptive_k(double sigma_d, double k_base, double eps) {
  if (!(k_base > 0.0)) throw InvalidArgument("adaptive_k: k_base must be positive");
  if (!(eps > 0.0)) throw InvalidArgument("adaptive_k: eps must be positive");
  if (!(sigma_d >= 0.0)) throw InvalidArgument("adaptive_k: sigma_d must be >= 0");
  return k_base / (sigma_d + eps);
}

DepthGuidanceParams derive_depth_params(const DepthMap& d, const DepthGuidanceConfig& cfg) {
  cfg.validate();
  DepthGuidanceParams p;
  p.tau = cfg.tau_override ? *cfg.tau_override : otsu_threshold(d, cfg.otsu_bins);
  const auto pooled = avgpool_stats(d, cfg.pool_kernel);
  p.mu_d = pooled.mu_d;
  p.sigma_d = pooled.sigma_d;
  p.k = adaptive_k(p.sigma_d, cfg.k_base, cfg.k_eps);
  p.pool_kernel = cfg.pool_kernel;
  p.farther_is_styled = cfg.farther_is_styled;
  return p;
}

WeightMap depth_weight_map(const DepthMap& d, const DepthGuidanceParams& params) {
  params.validate();
  constexpr double kLow = std::numeric_limits<double>::min();
  const double high = std::nextafter(1.0, 0.0);
  const double sign = params.farther_is_styled ? -1.0 : 1.0;
  Plane w(d.height(), d.width());
  auto src = d.values();
  auto dst = w.values();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const double z = sign * params.k * (src[i] - params.tau);
    dst[i] = std::clamp(1.0 / (1.0 + std::exp(z)), kLow, high);
  }
  return WeightMap(std::move(w));
}

}  // namespace dawct
