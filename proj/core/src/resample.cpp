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

#include "dawct/resample.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "dawct/error.hpp"
#include "dawct/parallel.hpp"

namespace dawct {
namespace {

struct Tap {
  int i0;
  int i1;
  double frac;
};

std::vector<Tap> make_taps(int src, int dst) {
  std::vector<Tap> taps(static_cast<std::size_t>(dst));
  const double ratio = static_cast<double>(src) / dst;
  for (int x = 0; x < dst; ++x) {
    double s = (x + 0.5) * ratio - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(src - 1));
    const int i0 = std::min(static_cast<int>(std::floor(s)), src - 1);
    const int i1 = std::min(i0 + 1, src - 1);
    taps[x] = {i0, i1, s - i0};
  }
  return taps;
}

void check_target(int h, int w) {
  if (h < 1 || w < 1) {
    throw InvalidArgument("resize: target dimensions must be >= 1, got " + std::to_string(h) +
                          "x" + std::to_string(w));
  }
}

// Resamples `planes` stacked H x W planes.
std::vector<double> resize_planes(std::span<const double> src, int planes, int h, int w,
                                  int nh, int nw) {
  check_target(nh, nw);
  if (nh == h && nw == w) return std::vector<double>(src.begin(), src.end());

  const auto xt = make_taps(w, nw);
  const auto yt = make_taps(h, nh);
  const std::size_t in_plane = static_cast<std::size_t>(h) * w;
  const std::size_t out_plane = static_cast<std::size_t>(nh) * nw;
  std::vector<double> out(out_plane * planes);

  parallel_for(static_cast<std::size_t>(planes) * nh, [&](std::size_t begin, std::size_t end) {
    for (std::size_t row = begin; row < end; ++row) {
      const int p = static_cast<int>(row / nh);
      const int y = static_cast<int>(row % nh);
      const double* base = src.data() + p * in_plane;
      const double* r0 = base + static_cast<std::size_t>(yt[y].i0) * w;
      const double* r1 = base + static_cast<std::size_t>(yt[y].i1) * w;
      double* dst = out.data() + p * out_plane + static_cast<std::size_t>(y) * nw;
      for (int x = 0; x < nw; ++x) {
        const Tap& t = xt[x];
        const double top = std::lerp(r0[t.i0], r0[t.i1], t.frac);
        const double bottom = std::lerp(r1[t.i0], r1[t.i1], t.frac);
        dst[x] = std::lerp(top, bottom, yt[y].frac);
      }
    }
  }, 16);
  return out;
}

}  // namespace

Plane resize_bilinear(const Plane& src, int new_height, int new_width) {
  return Plane(new_height, new_width,
               resize_planes(src.values(), 1, src.height(), src.width(), new_height, new_width));
}

ImageBuffer resize_bilinear(const ImageBuffer& src, int new_height, int new_width) {
  auto v = resize_planes(src.data(), ImageBuffer::kChannels, src.height(), src.width(),
                         new_height, new_width);
  // lerp keeps values inside their neighbours' range; the clamp only guards
  // against the last ulp.
  for (double& x : v) x = std::clamp(x, 0.0, 1.0);
  return ImageBuffer(new_height, new_width, std::move(v));
}

DepthMap resize_bilinear(const DepthMap& src, int new_height, int new_width) {
  auto p = resize_bilinear(src.plane(), new_height, new_width);
  for (double& x : p.values()) x = std::clamp(x, 0.0, 1.0);
  return DepthMap(std::move(p));
}

WeightMap resize_bilinear(const WeightMap& src, int new_height, int new_width) {
  auto p = resize_bilinear(src.plane(), new_height, new_width);
  for (double& x : p.values()) x = std::clamp(x, 0.0, 1.0);
  return WeightMap(std::move(p));
}

FeatureTensor resize_bilinear(const FeatureTensor& src, int new_height, int new_width) {
  return FeatureTensor(src.channels(), new_height, new_width,
                       resize_planes(src.data(), src.channels(), src.height(), src.width(),
                                     new_height, new_width));
}

BinaryMask resize_nearest(const BinaryMask& src, int new_height, int new_width) {
  check_target(new_height, new_width);
  if (new_height == src.height() && new_width == src.width()) return src;
  auto pick = [](int dst_i, int src_n, int dst_n) {
    const double s = (dst_i + 0.5) * static_cast<double>(src_n) / dst_n;
    return std::clamp(static_cast<int>(std::floor(s)), 0, src_n - 1);
  };
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(new_height) * new_width);
  for (int y = 0; y < new_height; ++y) {
    const int sy = pick(y, src.height(), new_height);
    for (int x = 0; x < new_width; ++x) {
      bits[static_cast<std::size_t>(y) * new_width + x] =
          src(sy, pick(x, src.width(), new_width)) ? 1 : 0;
    }
  }
  return BinaryMask(new_height, new_width, std::move(bits));
}

int scaled_dim(int n, double ratio) {
  return std::max(1, static_cast<int>(std::floor(ratio * n + 0.5)));
}

std::vector<FeatureTensor> build_scale_set(const FeatureTensor& t,
                                           const std::vector<double>& scales) {
  if (scales.empty()) throw InvalidArgument("build_scale_set: empty scale list");
  for (double s : scales) {
    if (!(s > 0.0 && s <= 1.0)) {
      throw InvalidArgument("build_scale_set: scale ratio must be in (0,1], got " +
                            std::to_string(s));
    }
  }
  std::vector<FeatureTensor> out;
  out.reserve(scales.size());
  for (double s : scales) {
    if (s == 1.0) {
      out.push_back(t);
    } else {
      out.push_back(resize_bilinear(t, scaled_dim(t.height(), s), scaled_dim(t.width(), s)));
    }
  }
  return out;
}

}  // namespace dawct
