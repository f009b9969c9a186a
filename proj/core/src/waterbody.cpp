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

#include "dawct/waterbody.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "dawct/error.hpp"
#include "dawct/log.hpp"
#include "dawct/resample.hpp"

namespace dawct {
namespace {

void check_fraction(double f) {
  if (!(f > 0.0 && f <= 1.0)) {
    throw InvalidArgument("far fraction must lie in (0,1], got " + std::to_string(f));
  }
}

void check_same_dims(const ImageBuffer& img, const DepthMap& d) {
  if (img.height() != d.height() || img.width() != d.width()) {
    throw InvalidArgument("style image and style depth dimensions differ");
  }
}

// Pixel indices sorted by depth descending, ties row-major.
std::vector<std::size_t> depth_order(const DepthMap& d) {
  std::vector<std::size_t> idx(d.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const auto v = d.values();
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return idx;
}

// Pixels with depth at least the depth of the n-th farthest pixel.
BinaryMask far_region(const DepthMap& d, const std::vector<std::size_t>& order, std::size_t n) {
  const double cutoff = d.values()[order[n - 1]];
  std::vector<std::uint8_t> bits(d.size());
  const auto v = d.values();
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = v[i] >= cutoff ? 1 : 0;
  return BinaryMask(d.height(), d.width(), std::move(bits));
}

}  // namespace

std::string_view to_string(MaskSource s) noexcept {
  switch (s) {
    case MaskSource::kFarBluishGreen: return "far_bluish_green";
    case MaskSource::kRelaxedFarBluishGreen: return "relaxed_far_bluish_green";
    case MaskSource::kBluishGreen: return "bluish_green";
    case MaskSource::kFullImage: return "full_image";
  }
  return "unknown";
}

std::size_t far_pixel_count(double fraction, std::size_t n) {
  check_fraction(fraction);
  // The tolerance absorbs representation error, e.g. 0.05 * 100.
  const double exact = fraction * static_cast<double>(n);
  auto k = static_cast<std::size_t>(std::ceil(exact - 1e-9 * std::max(1.0, exact)));
  return std::clamp<std::size_t>(k, 1, n);
}

std::array<double, 3> estimate_background(const ImageBuffer& style, const DepthMap& depth_s,
                                          double far_fraction) {
  check_fraction(far_fraction);
  check_same_dims(style, depth_s);
  const auto order = depth_order(depth_s);
  const std::size_t n = far_pixel_count(far_fraction, order.size());

  std::array<double, 3> out{};
  std::vector<double> vals(n);
  for (int c = 0; c < ImageBuffer::kChannels; ++c) {
    const auto ch = style.channel(c);
    for (std::size_t k = 0; k < n; ++k) vals[k] = ch[order[k]];
    const auto mid = vals.begin() + static_cast<std::ptrdiff_t>((n - 1) / 2);
    std::nth_element(vals.begin(), mid, vals.end());
    out[c] = *mid;
  }
  return out;
}

BinaryMask bluish_green_mask(const ImageBuffer& style, double margin) {
  if (!(margin >= 0.0)) throw InvalidArgument("bluish_green_mask: margin must be >= 0");
  const auto r = style.channel(0);
  const auto g = style.channel(1);
  const auto b = style.channel(2);
  std::vector<std::uint8_t> bits(style.pixel_count());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bits[i] = (b[i] >= r[i] + margin && g[i] >= r[i] + margin) ? 1 : 0;
  }
  return BinaryMask(style.height(), style.width(), std::move(bits));
}

WaterbodyEstimate estimate_waterbody(const ImageBuffer& style, const DepthMap& depth_s,
                                     double far_fraction, double margin) {
  WaterbodyEstimate est;
  est.background_color = estimate_background(style, depth_s, far_fraction);
  est.far_fraction = far_fraction;

  const BinaryMask color_mask = bluish_green_mask(style, margin);
  const auto order = depth_order(depth_s);

  BinaryMask mask = color_mask & far_region(depth_s, order, far_pixel_count(far_fraction, order.size()));
  if (mask.count() >= 2) {
    est.mask = std::move(mask);
    est.source = MaskSource::kFarBluishGreen;
    return est;
  }
  const double relaxed = std::min(1.0, 4.0 * far_fraction);
  mask = color_mask & far_region(depth_s, order, far_pixel_count(relaxed, order.size()));
  if (mask.count() >= 2) {
    est.mask = std::move(mask);
    est.source = MaskSource::kRelaxedFarBluishGreen;
    return est;
  }
  if (color_mask.count() >= 2) {
    est.mask = color_mask;
    est.source = MaskSource::kBluishGreen;
    return est;
  }
  warn("waterbody: fewer than 2 bluish-green pixels in style image; using full-image statistics");
  est.mask = BinaryMask(style.height(), style.width(), true);
  est.source = MaskSource::kFullImage;
  return est;
}

StyleStats waterbody_stats(const FeatureTensor& style_features, const WaterbodyEstimate& estimate) {
  const BinaryMask mask =
      resize_nearest(estimate.mask, style_features.height(), style_features.width());
  if (mask.count() < 2) {
    warn("waterbody: mask selects " + std::to_string(mask.count()) +
         " pixels at feature resolution; using full-image statistics");
    return compute_stats(style_features);
  }
  return compute_stats(style_features, mask);
}

}  // namespace dawct
