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

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "doctest.h"
#include "dawct/error.hpp"
#include "dawct/log.hpp"
#include "dawct/waterbody.hpp"
#include "test_support.hpp"

using namespace dawct;

namespace {

// Sort-and-take-lower-median oracle over explicit (depth, color) pairs.
std::array<double, 3> background_oracle(const ImageBuffer& img, const DepthMap& d, std::size_t n) {
  std::vector<std::size_t> idx(d.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (d.values()[a] != d.values()[b]) return d.values()[a] > d.values()[b];
    return a < b;
  });
  std::array<double, 3> out{};
  for (int c = 0; c < 3; ++c) {
    std::vector<double> v;
    for (std::size_t k = 0; k < n; ++k) v.push_back(img.channel(c)[idx[k]]);
    std::sort(v.begin(), v.end());
    out[c] = v[(n - 1) / 2];
  }
  return out;
}

struct WarningCapture {
  std::vector<std::string> messages;
  WarningSink previous;
  WarningCapture() {
    previous = set_warning_sink([this](const std::string& m) { messages.push_back(m); });
  }
  ~WarningCapture() { set_warning_sink(previous); }
};

}  // namespace

TEST_CASE("estimate_background constant color") {
  const ImageBuffer img(4, 4, std::array<double, 3>{0.1, 0.5, 0.7});
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Plane p(4, 4);
  for (double& x : p.values()) x = u(rng);
  const auto bg = estimate_background(img, DepthMap(p), 0.05);
  CHECK(bg == std::array<double, 3>{0.1, 0.5, 0.7});
}

TEST_CASE("estimate_background picks the farthest pixel of a 10-pixel row") {
  std::vector<double> v(30);
  Plane depth(1, 10);
  for (int x = 0; x < 10; ++x) {
    depth(0, x) = x / 10.0;
    v[x] = 0.01 * x;
    v[10 + x] = 0.02 * x;
    v[20 + x] = 0.05 * x;
  }
  CHECK(far_pixel_count(0.05, 10) == 1);
  const auto bg = estimate_background(ImageBuffer(1, 10, v), DepthMap(depth), 0.05);
  CHECK(bg[0] == 0.09);
  CHECK(bg[1] == 0.18);
  CHECK(bg[2] == 0.45);
}

TEST_CASE("estimate_background of 100 pixels uses the 5 farthest") {
  CHECK(far_pixel_count(0.05, 100) == 5);
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  std::vector<double> v(300);
  for (double& x : v) x = u(rng);
  Plane depth(10, 10);
  for (std::size_t i = 0; i < 100; ++i) depth.values()[i] = 0.5 * u(rng);
  // The five farthest pixels, with channel medians 0.1, 0.4, 0.6.
  const std::size_t far[] = {3, 17, 42, 68, 99};
  const double r[] = {0.9, 0.1, 0.05, 0.2, 0.0};
  const double g[] = {0.4, 0.3, 0.8, 0.45, 0.35};
  const double b[] = {0.6, 0.7, 0.5, 0.65, 0.55};
  for (int k = 0; k < 5; ++k) {
    depth.values()[far[k]] = 0.9 + 0.01 * k;
    v[far[k]] = r[k];
    v[100 + far[k]] = g[k];
    v[200 + far[k]] = b[k];
  }
  const ImageBuffer img(10, 10, v);
  const DepthMap d(depth);
  const auto bg = estimate_background(img, d, 0.05);
  CHECK(bg == std::array<double, 3>{0.1, 0.4, 0.6});
  CHECK(bg == background_oracle(img, d, 5));
}

TEST_CASE("estimate_background matches oracle and is permutation invariant") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const auto img = testing::random_image(rng, 12, 13);
    std::uniform_int_distribution<int> level(0, 20);
    Plane p(12, 13);
    for (double& x : p.values()) x = level(rng) / 20.0;  // many ties
    const DepthMap d(p);
    for (double f : {0.05, 0.1, 0.5}) {
      const auto bg = estimate_background(img, d, f);
      CHECK(bg == background_oracle(img, d, far_pixel_count(f, d.size())));
    }

    // Reverse the pixel order; with distinct depths the selection is unchanged.
    Plane distinct(12, 13);
    std::vector<double> perm_img(img.data().size());
    Plane perm_depth(12, 13);
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i) distinct.values()[i] = (i * 37 % n) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      perm_depth.values()[n - 1 - i] = distinct.values()[i];
      for (int c = 0; c < 3; ++c) perm_img[c * n + n - 1 - i] = img.channel(c)[i];
    }
    CHECK(estimate_background(img, DepthMap(distinct), 0.1) ==
          estimate_background(ImageBuffer(12, 13, perm_img), DepthMap(perm_depth), 0.1));
  }
}

TEST_CASE("estimate_background full fraction with flat depth is the whole-image median") {
  std::mt19937_64 rng(34);
  const auto img = testing::random_image(rng, 7, 9);
  const auto bg = estimate_background(img, DepthMap(7, 9, 0.5), 1.0);
  for (int c = 0; c < 3; ++c) {
    std::vector<double> v(img.channel(c).begin(), img.channel(c).end());
    std::sort(v.begin(), v.end());
    CHECK(bg[c] == v[(v.size() - 1) / 2]);
  }
}

TEST_CASE("estimate_background validation") {
  const ImageBuffer img(2, 2, std::array<double, 3>{0, 0, 0});
  CHECK_THROWS_AS(estimate_background(img, DepthMap(2, 3, 0.0), 0.05), InvalidArgument);
  CHECK_THROWS_AS(estimate_background(img, DepthMap(2, 2, 0.0), 0.0), InvalidArgument);
  CHECK_THROWS_AS(estimate_background(img, DepthMap(2, 2, 0.0), 1.5), InvalidArgument);
}

TEST_CASE("bluish_green_mask") {
  const auto one = [](double r, double g, double b, double margin) {
    return bluish_green_mask(ImageBuffer(1, 1, std::array<double, 3>{r, g, b}), margin)(0, 0);
  };
  CHECK(one(0, 0, 1, 0.0));
  CHECK_FALSE(one(1, 0, 0, 0.0));
  CHECK(one(0.5, 0.5, 0.5, 0.0));
  CHECK_FALSE(one(0.3, 0.31, 0.32, 0.05));
  CHECK(one(0.3, 0.36, 0.4, 0.05));
  CHECK_THROWS_AS(bluish_green_mask(ImageBuffer(1, 1, std::array<double, 3>{0, 0, 0}), -0.1),
                  InvalidArgument);

  // Per-pixel and idempotent: filtering the kept pixels keeps them all.
  std::mt19937_64 rng(35);
  const auto img = testing::random_image(rng, 9, 9);
  const auto m = bluish_green_mask(img, 0.02);
  CHECK(m == bluish_green_mask(img, 0.02));
  for (int y = 0; y < 9; ++y) {
    for (int x = 0; x < 9; ++x) {
      CHECK(m(y, x) == one(img.at(0, y, x), img.at(1, y, x), img.at(2, y, x), 0.02));
    }
  }
}

TEST_CASE("estimate_waterbody fallback chain") {
  // Far region is blue water, near region red reef.
  std::vector<double> v(3 * 100);
  Plane depth(10, 10);
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) {
      const std::size_t i = y * 10 + x;
      depth.values()[i] = y / 9.0;
      const bool water = y >= 5;
      v[i] = water ? 0.1 : 0.8;
      v[100 + i] = water ? 0.4 : 0.2;
      v[200 + i] = water ? 0.6 : 0.1;
    }
  }
  const ImageBuffer img(10, 10, v);
  auto est = estimate_waterbody(img, DepthMap(depth), 0.05, 0.0);
  CHECK(est.source == MaskSource::kFarBluishGreen);
  // 5 farthest pixels are in row 9; the >= cutoff rule keeps the whole row.
  CHECK(est.mask.count() == 10);
  CHECK(est.background_color == std::array<double, 3>{0.1, 0.4, 0.6});

  // No bluish-green pixel in the far region: relaxed region reaches row 8.
  std::vector<double> v2 = v;
  for (int x = 0; x < 10; ++x) {
    v2[90 + x] = 0.9;  // make row 9 red
  }
  est = estimate_waterbody(ImageBuffer(10, 10, v2), DepthMap(depth), 0.05, 0.0);
  CHECK(est.source == MaskSource::kRelaxedFarBluishGreen);

  // Only the color filter helps.
  std::vector<double> v3 = v;
  for (int y = 6; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) v3[y * 10 + x] = 0.9;
  }
  est = estimate_waterbody(ImageBuffer(10, 10, v3), DepthMap(depth), 0.05, 0.0);
  CHECK(est.source == MaskSource::kBluishGreen);
  CHECK(est.mask.count() == 10);

  // Nothing bluish-green at all.
  WarningCapture capture;
  est = estimate_waterbody(ImageBuffer(10, 10, std::array<double, 3>{0.9, 0.1, 0.1}),
                           DepthMap(depth), 0.05, 0.0);
  CHECK(est.source == MaskSource::kFullImage);
  CHECK(est.mask.count() == 100);
  CHECK(capture.messages.size() == 1);
}

TEST_CASE("waterbody_stats") {
  std::mt19937_64 rng(36);
  const auto f = testing::mixed_tensor(rng, 3, 8, 8);
  WaterbodyEstimate full{{0, 0, 0}, BinaryMask(8, 8, true), 0.05, MaskSource::kFullImage};
  const auto s = waterbody_stats(f, full);
  const auto ref = compute_stats(f);
  CHECK(s.mean == ref.mean);
  CHECK(s.cov == ref.cov);

  // Half red reef / half blue water: stats equal the blue half's stats.
  std::vector<double> v(3 * 64);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  std::vector<std::uint8_t> bits(64);
  std::vector<double> blue_half;
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < 64; ++i) {
      const bool water = i >= 32;
      const double base = water ? (c == 0 ? 0.1 : (c == 1 ? 0.45 : 0.7)) : (c == 0 ? 0.8 : 0.2);
      v[c * 64 + i] = base + u(rng);
      bits[i] = water;
    }
  }
  for (int c = 0; c < 3; ++c) {
    for (int i = 32; i < 64; ++i) blue_half.push_back(v[c * 64 + i]);
  }
  const FeatureTensor style(3, 8, 8, v);
  const auto half = compute_stats(FeatureTensor(3, 4, 8, blue_half));
  const auto got =
      waterbody_stats(style, WaterbodyEstimate{{}, BinaryMask(8, 8, bits), 0.05, MaskSource::kBluishGreen});
  CHECK(testing::max_abs_diff(got.mean, half.mean) < 1e-15);
  CHECK(frobenius_norm(got.cov - half.cov) < 1e-15);

  // Constant region -> zero covariance.
  const FeatureTensor flat(3, 4, 4, 0.3);
  const auto z = waterbody_stats(
      flat, WaterbodyEstimate{{}, BinaryMask(4, 4, true), 0.05, MaskSource::kFullImage});
  for (double c : z.cov.values()) CHECK(std::abs(c) < 1e-15);
}

TEST_CASE("waterbody_stats falls back with a warning and resamples the mask") {
  std::mt19937_64 rng(37);
  const auto f = testing::mixed_tensor(rng, 3, 4, 4);
  std::vector<std::uint8_t> bits(64, 0);
  bits[0] = 1;
  WarningCapture capture;
  const auto s = waterbody_stats(f, WaterbodyEstimate{{}, BinaryMask(8, 8, bits), 0.05,
                                                      MaskSource::kBluishGreen});
  CHECK(capture.messages.size() == 1);
  CHECK(s.cov == compute_stats(f).cov);
}
