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

#include <cmath>
#include <random>

#include "doctest.h"
#include "dawct/dawct.hpp"
#include "dawct/error.hpp"
#include "dawct/features.hpp"
#include "dawct/parallel.hpp"
#include "dawct/resample.hpp"
#include "otsu_oracle.hpp"
#include "test_support.hpp"

using namespace dawct;

namespace {

DawctConfig single_scale_config() {
  DawctConfig cfg;
  cfg.scales = {1.0};
  cfg.apply_guided_filter = false;
  return cfg;
}

// Weight map forced to (numerically) 1 everywhere.
DawctConfig saturated_config() {
  DawctConfig cfg = single_scale_config();
  cfg.depth.tau_override = 0.0;
  cfg.depth.k_base = 1e6;
  return cfg;
}

DepthMap random_depth(std::mt19937_64& rng, int h, int w) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Plane p(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) p(y, x) = std::clamp(0.7 * y / h + 0.3 * u(rng), 0.0, 1.0);
  }
  return DepthMap(std::move(p));
}

}  // namespace

TEST_CASE("wct_transfer identity and scalar closed form") {
  std::mt19937_64 rng(41);
  const auto f = testing::mixed_tensor(rng, 4, 12, 12);
  const auto s = compute_stats(f);
  CHECK(testing::max_abs_diff(wct_transfer(f, s, s).data(), f.data()) < 1e-6);

  const FeatureTensor fc(1, 1, 3, std::vector<double>{0.0, 2.0, 4.0});
  const auto sc = compute_stats(fc);
  CHECK(sc.mean[0] == 2.0);
  CHECK(sc.cov(0, 0) == 4.0);
  const StyleStats ss{{10.0}, Matrix(1, 1, {1.0})};
  const auto out = wct_transfer(fc, sc, ss);
  CHECK(out.at(0, 0, 0) == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(out.at(0, 0, 1) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(out.at(0, 0, 2) == doctest::Approx(11.0).epsilon(1e-12));

  const FeatureTensor flat(2, 3, 3, 0.25);
  const StyleStats target{{1.0, -2.0}, Matrix(2, 2, {2.0, 0.5, 0.5, 1.0})};
  const auto o = wct_transfer(flat, compute_stats(flat), target);
  for (double v : o.channel(0)) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
  for (double v : o.channel(1)) CHECK(v == doctest::Approx(-2.0).epsilon(1e-9));

  CHECK_THROWS_AS(wct_transfer(flat, compute_stats(f), target), InvalidArgument);
}

TEST_CASE("depth_blend") {
  const FeatureTensor a(2, 3, 3, 2.0);
  const FeatureTensor b(2, 3, 3, 4.0);
  CHECK(depth_blend(a, b, WeightMap(3, 3, 1.0)) == a);
  CHECK(depth_blend(a, b, WeightMap(3, 3, 0.0)) == b);
  const auto half = depth_blend(a, b, WeightMap(3, 3, 0.5));
  for (double v : half.data()) CHECK(v == 3.0);
  // Weights at other resolutions are resampled.
  const auto resampled = depth_blend(a, b, WeightMap(6, 5, 0.5));
  for (double v : resampled.data()) CHECK(v == 3.0);
  CHECK_THROWS_AS(depth_blend(a, FeatureTensor(1, 3, 3, 0.0), WeightMap(3, 3, 0.5)),
                  InvalidArgument);
}

TEST_CASE("alpha_blend") {
  std::mt19937_64 rng(42);
  const auto fd = testing::random_tensor(rng, 3, 5, 5);
  const auto fc = testing::random_tensor(rng, 3, 5, 5);
  CHECK(alpha_blend(fd, fc, 0.0) == fc);
  CHECK(alpha_blend(fd, fc, 1.0) == fd);
  const auto quarter = alpha_blend(FeatureTensor(1, 2, 2, 8.0), FeatureTensor(1, 2, 2, 0.0), 0.25);
  for (double v : quarter.data()) {
    CHECK(v == 2.0);
  }
  CHECK_THROWS_AS(alpha_blend(fd, fc, -0.1), InvalidArgument);
  CHECK_THROWS_AS(alpha_blend(fd, fc, 1.1), InvalidArgument);

  // Distance to the content grows linearly in alpha.
  double prev = -1.0;
  for (int i = 0; i <= 10; ++i) {
    const auto out = alpha_blend(fd, fc, i / 10.0);
    double dist = 0.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
      dist += (out.data()[k] - fc.data()[k]) * (out.data()[k] - fc.data()[k]);
    }
    CHECK(std::sqrt(dist) >= prev - 1e-12);
    prev = std::sqrt(dist);
  }
}

TEST_CASE("dawct_single_scale boundary cases") {
  std::mt19937_64 rng(43);
  const auto fc = testing::mixed_tensor(rng, 3, 10, 10);
  const auto fs = testing::mixed_tensor(rng, 3, 10, 10);
  const auto d = random_depth(rng, 10, 10);

  DawctConfig cfg = single_scale_config();
  cfg.alpha = 0.0;
  CHECK(dawct_single_scale(fc, fs, d, nullptr, cfg) == fc);

  cfg.alpha = 1.0;
  const DepthMap flat(10, 10, 0.4);
  const auto out = dawct_single_scale(fc, fs, flat, nullptr, cfg);
  const auto f_tilde = wct_transfer(fc, compute_stats(fc), compute_stats(fs));
  for (std::size_t k = 0; k < out.size(); ++k) {
    CHECK(out.data()[k] == doctest::Approx(0.5 * f_tilde.data()[k] + 0.5 * fc.data()[k]).epsilon(1e-12));
  }
}

TEST_CASE("dawct_single_scale matches a chained scalar oracle") {
  // 1 channel, 2x4 pixels.
  const std::vector<double> content = {0.1, 0.5, 0.2, 0.9, 0.4, 0.3, 0.8, 0.6};
  const std::vector<double> style = {2.0, 3.0, 2.5, 4.0, 3.5, 2.2, 3.1, 2.8};
  const std::vector<double> depth = {0.1, 0.2, 0.15, 0.8, 0.85, 0.9, 0.3, 0.7};
  const FeatureTensor fc(1, 2, 4, content);
  const FeatureTensor fs(1, 2, 4, style);
  const DepthMap d(Plane(2, 4, depth));
  DawctConfig cfg = single_scale_config();
  cfg.alpha = 0.8;
  cfg.depth.pool_kernel = 3;

  auto mean_var = [](const std::vector<double>& v, double& mean, double& var) {
    mean = 0.0;
    for (double x : v) mean += x;
    mean /= v.size();
    var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= (v.size() - 1);
  };
  double mc, vc, ms, vs;
  mean_var(content, mc, vc);
  mean_var(style, ms, vs);
  const double gain = std::sqrt(vs) / std::sqrt(vc);

  const double tau = testing::otsu_exhaustive(d, 256);
  // 3x3 replicate-padded moving average, population std.
  std::vector<double> pooled(8);
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 4; ++x) {
      double s = 0.0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          s += depth[std::clamp(y + dy, 0, 1) * 4 + std::clamp(x + dx, 0, 3)];
        }
      }
      pooled[y * 4 + x] = s / 9.0;
    }
  }
  double mu_d = 0.0;
  for (double p : pooled) mu_d += p / 8.0;
  double var_d = 0.0;
  for (double p : pooled) var_d += (p - mu_d) * (p - mu_d) / 8.0;
  const double k = 10.0 / (std::sqrt(var_d) + 0.05);

  ScaleTrace trace;
  const auto out = dawct_single_scale(fc, fs, d, nullptr, cfg, &trace);
  CHECK(trace.depth.tau == tau);
  CHECK(trace.depth.mu_d == doctest::Approx(mu_d).epsilon(1e-14));
  CHECK(trace.depth.k == doctest::Approx(k).epsilon(1e-12));
  for (int i = 0; i < 8; ++i) {
    const double tilde = ms + gain * (content[i] - mc);
    const double w = 1.0 / (1.0 + std::exp(-k * (depth[i] - tau)));
    const double fdepth = w * tilde + (1.0 - w) * content[i];
    const double expected = 0.8 * fdepth + 0.2 * content[i];
    CHECK(out.data()[i] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("saturated weights reproduce the style covariance") {
  std::mt19937_64 rng(44);
  for (int c : {3, 8}) {
    const auto fc = testing::mixed_tensor(rng, c, 32, 32);
    const auto fs = testing::mixed_tensor(rng, c, 32, 32);
    const auto out = dawct_single_scale(fc, fs, DepthMap(32, 32, 1.0), nullptr, saturated_config());
    const auto so = compute_stats(out);
    const auto ss = compute_stats(fs);
    CHECK(frobenius_norm(so.cov - ss.cov) < 1e-3);
    CHECK(testing::max_abs_diff(so.mean, ss.mean) < 1e-6);
  }
}

TEST_CASE("dawct_multiscale single scale is bit-identical to single-scale") {
  std::mt19937_64 rng(45);
  const auto fc = testing::mixed_tensor(rng, 3, 16, 12);
  const auto fs = testing::mixed_tensor(rng, 3, 9, 11);
  const auto d = random_depth(rng, 20, 20);
  DawctConfig cfg = single_scale_config();
  cfg.alpha = 0.7;
  CHECK(dawct_multiscale(fc, fs, d, nullptr, cfg) == dawct_single_scale(fc, fs, d, nullptr, cfg));
}

TEST_CASE("dawct_multiscale averages per-scale results") {
  std::mt19937_64 rng(46);
  const auto fc = testing::mixed_tensor(rng, 3, 16, 16);
  const auto fs = testing::mixed_tensor(rng, 3, 16, 16);
  const auto d = random_depth(rng, 16, 16);
  DawctConfig cfg = single_scale_config();
  cfg.scales = {1.0, 0.5};
  cfg.scale_weights = {0.5, 0.5};

  FusionTrace trace;
  const auto out = dawct_multiscale(fc, fs, d, nullptr, cfg, &trace);
  REQUIRE(trace.scales.size() == 2);
  CHECK(trace.scales[1].height == 8);
  CHECK(trace.scales[1].scale == 0.5);

  // Oracle: each scale run on its own, change upsampled, then averaged.
  const auto full = dawct_single_scale(fc, fs, d, nullptr, cfg);
  const auto fc_half = resize_bilinear(fc, 8, 8);
  const auto half = dawct_single_scale(fc_half, resize_bilinear(fs, 8, 8), d, nullptr, cfg);
  std::vector<double> change(half.size());
  for (std::size_t k = 0; k < change.size(); ++k) change[k] = half.data()[k] - fc_half.data()[k];
  const auto up = resize_bilinear(FeatureTensor(3, 8, 8, change), 16, 16);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double r0 = full.data()[k];
    const double r1 = fc.data()[k] + up.data()[k];
    CHECK(out.data()[k] == doctest::Approx(0.5 * r0 + 0.5 * r1).epsilon(1e-12));
    // Convex hull of the per-scale results.
    CHECK(out.data()[k] >= std::min(r0, r1) - 1e-12);
    CHECK(out.data()[k] <= std::max(r0, r1) + 1e-12);
  }
}

TEST_CASE("dawct_multiscale constants are scale invariant") {
  const FeatureTensor fc(3, 12, 12, 0.3);
  const FeatureTensor fs(3, 12, 12, 0.7);
  const DepthMap d(12, 12, 0.5);
  DawctConfig cfg = single_scale_config();
  const auto single = dawct_single_scale(fc, fs, d, nullptr, cfg);
  cfg.scales = {1.0, 0.75, 0.5, 0.25};
  const auto multi = dawct_multiscale(fc, fs, d, nullptr, cfg);
  CHECK(testing::max_abs_diff(single.data(), multi.data()) < 1e-12);
  for (double v : multi.data()) CHECK(v == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("dawct_multiscale alpha 0 is exact at every scale set") {
  std::mt19937_64 rng(47);
  const auto fc = testing::mixed_tensor(rng, 3, 20, 20);
  const auto fs = testing::mixed_tensor(rng, 3, 20, 20);
  DawctConfig cfg;
  cfg.alpha = 0.0;
  CHECK(dawct_multiscale(fc, fs, random_depth(rng, 20, 20), nullptr, cfg) == fc);
}

TEST_CASE("config validation") {
  DawctConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.effective_scale_weights() == std::vector<double>{0.25, 0.25, 0.25, 0.25});
  cfg.alpha = 1.5;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = DawctConfig{};
  cfg.scale_weights = {0.5, 0.5};
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg.scale_weights = {0.5, 0.5, 0.5, -0.5};
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg.scale_weights = {0.4, 0.4, 0.1, 0.0};
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = DawctConfig{};
  cfg.scales = {};
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg.scales = {0.0};
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("stylize alpha 0 without guided filter returns the content") {
  std::mt19937_64 rng(48);
  const auto content = testing::random_image(rng, 24, 20);
  const auto style = testing::random_image(rng, 30, 33);
  DawctConfig cfg;
  cfg.alpha = 0.0;
  cfg.apply_guided_filter = false;
  CHECK(stylize(content, style, random_depth(rng, 24, 20), random_depth(rng, 30, 33), cfg) == content);
  cfg.patch_radius = 1;
  CHECK(stylize(content, style, random_depth(rng, 12, 10), random_depth(rng, 30, 33), cfg) == content);
}

TEST_CASE("stylize with style = content reproduces the content") {
  std::mt19937_64 rng(49);
  const auto scene = testing::blob_scene(rng, 64, 56, true);
  DawctConfig cfg;
  cfg.use_waterbody_mask = false;
  cfg.apply_guided_filter = false;
  const auto out = stylize(scene, scene, random_depth(rng, 64, 56), random_depth(rng, 30, 30), cfg);
  CHECK(testing::max_abs_diff(out.data(), scene.data()) < 1e-9);
  cfg.patch_radius = 1;
  const auto patched = stylize(scene, scene, random_depth(rng, 64, 56), random_depth(rng, 30, 30), cfg);
  CHECK(testing::max_abs_diff(patched.data(), scene.data()) < 1e-9);

  // With the guided filter, an image affine in its own luma survives as
  // epsilon -> 0.
  const auto ramp = testing::ramp_scene(64, 64);
  cfg.patch_radius = 0;
  cfg.apply_guided_filter = true;
  cfg.gif.epsilon = 1e-7;
  const auto smoothed = stylize(ramp, ramp, random_depth(rng, 64, 64), random_depth(rng, 64, 64), cfg);
  CHECK(testing::max_abs_diff(smoothed.data(), ramp.data()) <= 2.0 / 255.0);
}

TEST_CASE("stylize toward a uniform blue style shifts means by the WCT amount") {
  // Two-tone content, flat depths: w = 0.5, style covariance ~ 0, so the
  // fused pixel is 0.5 * mu_s + 0.5 * content.
  std::vector<double> v(3 * 16 * 16);
  for (int i = 0; i < 256; ++i) {
    const bool left = (i % 16) < 8;
    v[i] = left ? 0.6 : 0.3;
    v[256 + i] = left ? 0.5 : 0.2;
    v[512 + i] = left ? 0.4 : 0.1;
  }
  const ImageBuffer content(16, 16, v);
  const std::array<double, 3> blue{0.05, 0.35, 0.75};
  const ImageBuffer style(16, 16, blue);
  DawctConfig cfg = single_scale_config();
  StylizeTrace trace;
  const auto out = stylize(content, style, DepthMap(16, 16, 0.5), DepthMap(16, 16, 0.5), cfg, &trace);
  REQUIRE(trace.waterbody.has_value());
  CHECK(trace.waterbody->background_color == blue);
  const double content_mean[] = {0.45, 0.35, 0.25};
  for (int c = 0; c < 3; ++c) {
    double m = 0.0;
    for (double x : out.channel(c)) m += x / 256.0;
    CHECK(m == doctest::Approx(0.5 * blue[c] + 0.5 * content_mean[c]).epsilon(1e-6));
  }

  cfg.scales = {1.0, 0.75, 0.5, 0.25};
  const auto multi = stylize(content, style, DepthMap(16, 16, 0.5), DepthMap(16, 16, 0.5), cfg);
  for (int c = 0; c < 3; ++c) {
    double m = 0.0;
    for (double x : multi.channel(c)) m += x / 256.0;
    CHECK(m == doctest::Approx(0.5 * blue[c] + 0.5 * content_mean[c]).epsilon(1e-2));
  }
}

TEST_CASE("stylize is deterministic across thread counts and finite") {
  std::mt19937_64 rng(50);
  const auto content = testing::random_image(rng, 40, 36);
  const auto style = testing::random_image(rng, 40, 36);
  const auto dc = random_depth(rng, 40, 36);
  const auto ds = random_depth(rng, 40, 36);
  DawctConfig cfg;
  cfg.patch_radius = 1;
  set_thread_count(1);
  StylizeTrace t1;
  const auto a = stylize(content, style, dc, ds, cfg, &t1);
  set_thread_count(8);
  const auto b = stylize(content, style, dc, ds, cfg);
  set_thread_count(1);
  CHECK(a == b);
  CHECK(t1.fusion.scales.size() == 4);
  CHECK(t1.timings_ms.count("fusion") == 1);
  for (double v : a.data()) CHECK((v >= 0.0 && v <= 1.0));
}
