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

#include "dawct/dawct.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "dawct/error.hpp"
#include "dawct/features.hpp"
#include "dawct/parallel.hpp"
#include "dawct/resample.hpp"

namespace dawct {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

void check_same_shape(const FeatureTensor& a, const FeatureTensor& b, const char* what) {
  if (!a.same_shape(b)) {
    throw InvalidArgument(std::string(what) + ": tensor shapes differ");
  }
}

}  // namespace

void DawctConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0,1]");
  if (scales.empty()) throw InvalidArgument("scale list is empty");
  for (double s : scales) {
    if (!(s > 0.0 && s <= 1.0)) throw InvalidArgument("scale ratios must lie in (0,1]");
  }
  if (!scale_weights.empty()) {
    if (scale_weights.size() != scales.size()) {
      throw InvalidArgument("scale weights and scales differ in length");
    }
    double sum = 0.0;
    for (double w : scale_weights) {
      if (!(w >= 0.0)) throw InvalidArgument("scale weights must be non-negative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("scale weights must sum to 1");
  }
  depth.validate();
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  gif.validate();
  if (patch_radius < 0) throw InvalidArgument("patch radius must be >= 0");
  if (!(far_fraction > 0.0 && far_fraction <= 1.0)) {
    throw InvalidArgument("far fraction must lie in (0,1]");
  }
  if (!(bg_margin >= 0.0)) throw InvalidArgument("background margin must be >= 0");
}

std::vector<double> DawctConfig::effective_scale_weights() const {
  if (!scale_weights.empty()) return scale_weights;
  return std::vector<double>(scales.size(), 1.0 / static_cast<double>(scales.size()));
}

FeatureTensor wct_transfer(const FeatureTensor& f_c, const StyleStats& stats_c,
                           const StyleStats& stats_s, double eps) {
  const auto c = static_cast<std::size_t>(f_c.channels());
  if (stats_c.channels() != c || stats_s.channels() != c) {
    throw InvalidArgument("wct_transfer: channel counts differ (" + std::to_string(c) + ", " +
                          std::to_string(stats_c.channels()) + ", " +
                          std::to_string(stats_s.channels()) + ")");
  }
  const Matrix whitening =
      mat_pow_half(stats_c.cov, HalfPower::kInverseRoot, regularization_eps(stats_c.cov, eps));
  const Matrix coloring =
      mat_pow_half(stats_s.cov, HalfPower::kRoot, regularization_eps(stats_s.cov, eps));
  return apply_affine(f_c, coloring * whitening, stats_c.mean, stats_s.mean);
}

FeatureTensor depth_blend(const FeatureTensor& f_tilde, const FeatureTensor& f_c,
                          const WeightMap& w) {
  check_same_shape(f_tilde, f_c, "depth_blend");
  const WeightMap wr = (w.height() == f_c.height() && w.width() == f_c.width())
                           ? w
                           : resize_bilinear(w, f_c.height(), f_c.width());
  const std::size_t n = f_c.pixel_count();
  const auto wt = wr.values();
  std::vector<double> out(f_c.size());
  const auto a = f_tilde.data();
  const auto b = f_c.data();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double wi = wt[i % n];
    out[i] = wi * a[i] + (1.0 - wi) * b[i];
  }
  return FeatureTensor(f_c.channels(), f_c.height(), f_c.width(), std::move(out));
}

FeatureTensor alpha_blend(const FeatureTensor& f_depth, const FeatureTensor& f_c, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha_blend: alpha must lie in [0,1]");
  check_same_shape(f_depth, f_c, "alpha_blend");
  if (alpha == 0.0) return f_c;
  if (alpha == 1.0) return f_depth;
  std::vector<double> out(f_c.size());
  const auto a = f_depth.data();
  const auto b = f_c.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = alpha * a[i] + (1.0 - alpha) * b[i];
  return FeatureTensor(f_c.channels(), f_c.height(), f_c.width(), std::move(out));
}

FeatureTensor dawct_single_scale(const FeatureTensor& f_c, const FeatureTensor& f_s,
                                 const DepthMap& d_c, const WaterbodyEstimate* wb,
                                 const DawctConfig& cfg, ScaleTrace* trace) {
  cfg.validate();
  if (f_c.channels() != f_s.channels()) {
    throw InvalidArgument("dawct: content and style tensors differ in channel count");
  }
  const StyleStats stats_c = compute_stats(f_c);
  const StyleStats stats_s =
      (wb && cfg.use_waterbody_mask) ? waterbody_stats(f_s, *wb) : compute_stats(f_s);
  const FeatureTensor f_tilde = wct_transfer(f_c, stats_c, stats_s, cfg.eps);

  const DepthMap depth = (d_c.height() == f_c.height() && d_c.width() == f_c.width())
                             ? d_c
                             : resize_bilinear(d_c, f_c.height(), f_c.width());
  const DepthGuidanceParams params = derive_depth_params(depth, cfg.depth);
  const WeightMap w = depth_weight_map(depth, params);
  if (trace) *trace = ScaleTrace{1.0, f_c.height(), f_c.width(), params};

  return alpha_blend(depth_blend(f_tilde, f_c, w), f_c, cfg.alpha);
}

FeatureTensor dawct_multiscale(const FeatureTensor& f_c, const FeatureTensor& f_s,
                               const DepthMap& d_c, const WaterbodyEstimate* wb,
                               const DawctConfig& cfg, FusionTrace* trace) {
  cfg.validate();
  const auto weights = cfg.effective_scale_weights();
  const auto content_scales = build_scale_set(f_c, cfg.scales);
  const auto style_scales = build_scale_set(f_s, cfg.scales);
  const std::size_t count = cfg.scales.size();
  const bool single = count == 1 && content_scales[0].height() == f_c.height() &&
                      content_scales[0].width() == f_c.width();

  // results[i] is the per-scale change (fused - content) at full resolution.
  std::vector<FeatureTensor> results(count);
  std::vector<ScaleTrace> traces(count);
  // Scales are independent; each worker owns its slot.
  parallel_for(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const FeatureTensor& fc = content_scales[i];
      FeatureTensor fused = dawct_single_scale(fc, style_scales[i], d_c, wb, cfg, &traces[i]);
      traces[i].scale = cfg.scales[i];
      if (single) {
        results[i] = std::move(fused);
        continue;
      }
      std::vector<double> diff(fused.size());
      const auto a = fused.data();
      const auto b = fc.data();
      for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = a[k] - b[k];
      FeatureTensor delta(fc.channels(), fc.height(), fc.width(), std::move(diff));
      results[i] = (delta.height() == f_c.height() && delta.width() == f_c.width())
                       ? std::move(delta)
                       : resize_bilinear(delta, f_c.height(), f_c.width());
    }
  });
  if (trace) trace->scales = traces;

  if (single) return std::move(results[0]);

  const auto base = f_c.data();
  std::vector<double> acc(base.begin(), base.end());
  for (std::size_t i = 0; i < count; ++i) {
    const auto r = results[i].data();
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += weights[i] * r[k];
  }
  return FeatureTensor(f_c.channels(), f_c.height(), f_c.width(), std::move(acc));
}

ImageBuffer stylize(const ImageBuffer& content, const ImageBuffer& style, const DepthMap& d_c,
                    const DepthMap& d_s, const DawctConfig& cfg, StylizeTrace* trace) {
  cfg.validate();
  const int h = content.height();
  const int w = content.width();
  StylizeTrace local;
  StylizeTrace& tr = trace ? *trace : local;
  tr = StylizeTrace{};

  auto t0 = Clock::now();
  const DepthMap depth_c =
      (d_c.height() == h && d_c.width() == w) ? d_c : resize_bilinear(d_c, h, w);
  const ImageBuffer style_r =
      (style.height() == h && style.width() == w) ? style : resize_bilinear(style, h, w);
  const DepthMap depth_s =
      (d_s.height() == style.height() && d_s.width() == style.width())
          ? d_s
          : resize_bilinear(d_s, style.height(), style.width());
  const DepthMap depth_s_r =
      (depth_s.height() == h && depth_s.width() == w) ? depth_s : resize_bilinear(depth_s, h, w);
  tr.timings_ms["resample"] = elapsed_ms(t0);

  t0 = Clock::now();
  const FeatureTensor f_c = extract_pixel_features(content, cfg.patch_radius);
  const FeatureTensor f_s = extract_pixel_features(style_r, cfg.patch_radius);
  tr.timings_ms["features"] = elapsed_ms(t0);

  t0 = Clock::now();
  WaterbodyEstimate wb = estimate_waterbody(style_r, depth_s_r, cfg.far_fraction, cfg.bg_margin);
  if (!cfg.use_waterbody_mask) wb.mask = BinaryMask(h, w, true);
  tr.mask_pixels = wb.mask.count();
  tr.timings_ms["waterbody"] = elapsed_ms(t0);

  t0 = Clock::now();
  const FeatureTensor fused = dawct_multiscale(f_c, f_s, depth_c, cfg.use_waterbody_mask ? &wb : nullptr,
                                               cfg, &tr.fusion);
  tr.timings_ms["fusion"] = elapsed_ms(t0);
  tr.waterbody = std::move(wb);

  t0 = Clock::now();
  ImageBuffer out = decode_pixel_features(fused, cfg.patch_radius);
  if (cfg.apply_guided_filter) out = guided_filter(out, content, cfg.gif);
  tr.timings_ms["postprocess"] = elapsed_ms(t0);
  return out;
}

}  // namespace dawct
