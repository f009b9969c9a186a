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
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dawct/error.hpp"
#include "dawct/guided_filter.hpp"
#include "dawct/losses.hpp"
#include "dawct/metrics.hpp"
#include "test_support.hpp"

using namespace dawct;

namespace {

// O(N^2) DFT magnitude-spectrum loss with 1/(HW) normalization.
double naive_fft_loss(const ImageBuffer& a, const ImageBuffer& b) {
  const int h = a.height();
  const int w = a.width();
  const double n = static_cast<double>(h) * w;
  double total = 0.0;
  for (int c = 0; c < 3; ++c) {
    double s = 0.0;
    for (int u = 0; u < h; ++u) {
      for (int v = 0; v < w; ++v) {
        std::complex<double> fa, fb;
        for (int y = 0; y < h; ++y) {
          for (int x = 0; x < w; ++x) {
            const double ang = -2.0 * std::numbers::pi * (double(u) * y / h + double(v) * x / w);
            const std::complex<double> e(std::cos(ang), std::sin(ang));
            fa += a.at(c, y, x) * e;
            fb += b.at(c, y, x) * e;
          }
        }
        const double d = std::abs(fa) / n - std::abs(fb) / n;
        s += d * d;
      }
    }
    total += s / n;
  }
  return total / 3.0;
}

ImageBuffer shifted(const ImageBuffer& img, int sy, int sx) {
  std::vector<double> v(img.data().size());
  const int h = img.height();
  const int w = img.width();
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) v[(c * h + (y + sy) % h) * w + (x + sx) % w] = img.at(c, y, x);
    }
  }
  return ImageBuffer(h, w, v);
}

ImageBuffer blurred(const ImageBuffer& img, int r) {
  std::vector<double> v;
  for (int c = 0; c < 3; ++c) {
    const Plane p = box_filter(img.channel_plane(c), r);
    for (double x : p.values()) v.push_back(x);
  }
  return ImageBuffer(img.height(), img.width(), v);
}

}  // namespace

TEST_CASE("mse_loss and tensor_l2_loss") {
  std::mt19937_64 rng(70);
  const auto a = testing::random_image(rng, 6, 7);
  CHECK(mse_loss(a, a) == 0.0);
  const ImageBuffer c1(4, 4, std::array<double, 3>{0.2, 0.2, 0.2});
  const ImageBuffer c2(4, 4, std::array<double, 3>{0.5, 0.5, 0.5});
  CHECK(mse_loss(c1, c2) == doctest::Approx(0.09));
  const FeatureTensor t1(1, 1, 2, std::vector<double>{0.0, 1.0});
  const FeatureTensor t2(1, 1, 2, std::vector<double>{1.0, 1.0});
  CHECK(mse_loss(t1, t2) == 0.5);
  CHECK(tensor_l2_loss(t1, t2) == 0.5);
  CHECK(tensor_l2_loss(t1, t1) == 0.0);
  CHECK(tensor_l2_loss(FeatureTensor(2, 2, 2, 1.0), FeatureTensor(2, 2, 2, 4.0)) == 9.0);
  CHECK_THROWS_AS(mse_loss(a, testing::random_image(rng, 6, 8)), InvalidArgument);
  CHECK_THROWS_AS(tensor_l2_loss(t1, FeatureTensor(2, 1, 1, 0.0)), InvalidArgument);
}

TEST_CASE("ssim") {
  std::mt19937_64 rng(71);
  const auto a = testing::random_image(rng, 32, 32);
  CHECK(ssim(a, a) == 1.0);
  CHECK(ssim_loss(a, a) == 0.0);

  std::vector<double> inv;
  for (double v : a.data()) inv.push_back(1.0 - v);
  CHECK(ssim(a, ImageBuffer(32, 32, inv)) < 0.0);

  const ImageBuffer x(16, 16, std::array<double, 3>{0.5, 0.5, 0.5});
  const ImageBuffer y(16, 16, std::array<double, 3>{0.6, 0.6, 0.6});
  const double c1 = 0.01 * 0.01;
  const double ma = 0.5;
  const double mb = 0.6;
  CHECK(ssim(x, y) == doctest::Approx((2 * ma * mb + c1) / (ma * ma + mb * mb + c1)).epsilon(1e-9));

  // Windows larger than the image shrink to fit.
  const auto small = testing::random_image(rng, 4, 6);
  CHECK(ssim(small, small) == 1.0);
  const auto other = testing::random_image(rng, 4, 6);
  CHECK(ssim(small, other) == doctest::Approx(ssim(other, small)).epsilon(1e-12));
}

TEST_CASE("srgb_to_lab reference points") {
  const auto white = srgb_to_lab({1.0, 1.0, 1.0});
  CHECK(white[0] == doctest::Approx(100.0).epsilon(1e-4));
  CHECK(std::abs(white[1]) < 0.01);
  CHECK(std::abs(white[2]) < 0.01);
  const auto black = srgb_to_lab({0.0, 0.0, 0.0});
  CHECK(std::abs(black[0]) < 0.01);
  CHECK(std::abs(black[1]) < 0.01);
  CHECK(std::abs(black[2]) < 0.01);

  std::mt19937_64 rng(72);
  const auto a = testing::random_image(rng, 5, 5);
  const auto b = testing::random_image(rng, 5, 5);
  CHECK(lab_color_loss(a, a) == 0.0);
  CHECK(lab_color_loss(a, b) > 0.0);
  CHECK(lab_color_loss(a, b) == doctest::Approx(lab_color_loss(b, a)).epsilon(1e-12));
}

TEST_CASE("fft_loss") {
  std::mt19937_64 rng(73);
  const auto a = testing::random_image(rng, 6, 5);
  const auto b = testing::random_image(rng, 6, 5);
  CHECK(fft_loss(a, a) == 0.0);
  CHECK(fft_loss(a, b) == doctest::Approx(naive_fft_loss(a, b)).epsilon(1e-9));
  CHECK(fft_loss(a, b) == doctest::Approx(fft_loss(b, a)).epsilon(1e-12));

  const double c = 0.7;
  const double d = 0.2;
  const ImageBuffer cc(8, 4, std::array<double, 3>{c, c, c});
  const ImageBuffer dd(8, 4, std::array<double, 3>{d, d, d});
  CHECK(fft_loss(cc, dd) == doctest::Approx((c - d) * (c - d) / 32.0).epsilon(1e-12));

  CHECK(fft_loss(a, shifted(a, 2, 3)) < 1e-9);
  CHECK(fft_loss(shifted(a, 1, 4), shifted(b, 1, 4)) == doctest::Approx(fft_loss(a, b)).epsilon(1e-9));
}

TEST_CASE("clip_loss") {
  const std::vector<double> a{1.0, 2.0, 3.0};
  const std::vector<double> neg{-1.0, -2.0, -3.0};
  const std::vector<double> scaled{2.5, 5.0, 7.5};
  const std::vector<double> e0{1.0, 0.0};
  const std::vector<double> e1{0.0, 3.0};
  CHECK(clip_loss(a, a) == doctest::Approx(0.0));
  CHECK(clip_loss(a, scaled) == doctest::Approx(0.0));
  CHECK(clip_loss(e0, e1) == 1.0);
  CHECK(clip_loss(a, neg) == doctest::Approx(2.0));
  std::mt19937_64 rng(74);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> x(16), y(16);
    for (auto& v : x) v = n(rng);
    for (auto& v : y) v = n(rng);
    const double l = clip_loss(x, y);
    CHECK((l >= 0.0 && l <= 2.0));
  }
  CHECK_THROWS_AS(clip_loss(a, e0), InvalidArgument);
  CHECK_THROWS_AS(clip_loss(a, std::vector<double>{0.0, 0.0, 0.0}), InvalidArgument);
}

TEST_CASE("aggregate_losses") {
  LossReport zero{0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  auto z = aggregate_losses(zero, 2);
  CHECK(z.l0 == 0.0);
  REQUIRE(z.lN.has_value());
  CHECK(*z.lN == 0.0);

  LossReport r{1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 3.0};
  const auto agg = aggregate_losses(r, 1);
  CHECK(agg.l0 == 5.0);
  CHECK(*agg.lN == 10.0);

  LossReport stage0{1.0, 1.0, 1.0, 1.0, 1.0, std::nullopt, std::nullopt};
  const auto s0 = aggregate_losses(stage0, 0);
  CHECK(s0.l0 == 5.0);
  CHECK_FALSE(s0.lN.has_value());
  try {
    aggregate_losses(stage0, 3);
    FAIL("expected MissingComponent");
  } catch (const MissingComponent& e) {
    CHECK(e.component() == "l_feat");
  }
  LossReport no_clip = stage0;
  no_clip.l_clip.reset();
  CHECK_THROWS_AS(aggregate_losses(no_clip, 0), MissingComponent);
  CHECK_THROWS_AS(aggregate_losses(r, 5), InvalidArgument);
  CHECK_THROWS_AS(aggregate_losses(r, -1), InvalidArgument);
}

TEST_CASE("evaluate") {
  std::mt19937_64 rng(75);
  const auto a = testing::random_image(rng, 24, 24);
  const auto id = evaluate(a, a);
  CHECK(id.rmse == 0.0);
  CHECK(std::isinf(id.psnr));
  CHECK(id.ssim == 1.0);
  CHECK(id.gmsd == 0.0);

  const ImageBuffer x(8, 8, std::array<double, 3>{0.5, 0.5, 0.5});
  const double off = 0.5 + 1.0 / 255.0;
  const ImageBuffer y(8, 8, std::array<double, 3>{off, off, off});
  const auto r = evaluate(x, y);
  CHECK(r.rmse == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.psnr == doctest::Approx(48.1308).epsilon(1e-6));
  CHECK(psnr_from_rmse(3.7) == doctest::Approx(20.0 * std::log10(255.0 / 3.7)).epsilon(1e-12));

  const auto b1 = blurred(a, 1);
  const auto b3 = blurred(a, 3);
  CHECK(gmsd(a, b1) > gmsd(a, a));
  CHECK(evaluate(a, b3).rmse > evaluate(a, b1).rmse);
  CHECK(evaluate(a, b3).ssim < evaluate(a, b1).ssim);

  const auto ab = evaluate(a, b1);
  const auto ba = evaluate(b1, a);
  CHECK(ab.rmse == doctest::Approx(ba.rmse).epsilon(1e-12));
  CHECK(ab.ssim == doctest::Approx(ba.ssim).epsilon(1e-12));
  CHECK(ab.gmsd == doctest::Approx(ba.gmsd).epsilon(1e-12));
  CHECK(mse_loss(a, b1) == doctest::Approx(mse_loss(b1, a)).epsilon(1e-12));

  const auto big = testing::random_image(rng, 48, 48);
  CHECK_THROWS_AS(evaluate(a, big), InvalidArgument);
  CHECK(evaluate(a, big, true).rmse > 0.0);
}
