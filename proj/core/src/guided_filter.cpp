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

#include "dawct/guided_filter.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "dawct/error.hpp"
#include "dawct/parallel.hpp"

namespace dawct {
namespace {

Plane multiply(const Plane& a, const Plane& b) {
  Plane out(a.height(), a.width());
  auto av = a.values();
  auto bv = b.values();
  auto ov = out.values();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = av[i] * bv[i];
  return out;
}

}  // namespace

void GifParams::validate() const {
  if (radius < 0) throw InvalidArgument("guided filter: radius must be >= 0");
  if (!(epsilon >= 0.0)) throw InvalidArgument("guided filter: epsilon must be >= 0");
}

Plane box_filter(const Plane& src, int radius) {
  if (radius < 0) throw InvalidArgument("box_filter: radius must be >= 0");
  if (radius == 0) return src;
  const int h = src.height();
  const int w = src.width();
  const double norm = 1.0 / (2 * radius + 1);

  Plane rows(h, w);
  parallel_for(static_cast<std::size_t>(h), [&](std::size_t begin, std::size_t end) {
    for (std::size_t yy = begin; yy < end; ++yy) {
      const int y = static_cast<int>(yy);
      for (int x = 0; x < w; ++x) {
        double s = 0.0;
        for (int d = -radius; d <= radius; ++d) s += src(y, std::clamp(x + d, 0, w - 1));
        rows(y, x) = s * norm;
      }
    }
  }, 8);

  Plane out(h, w);
  parallel_for(static_cast<std::size_t>(h), [&](std::size_t begin, std::size_t end) {
    for (std::size_t yy = begin; yy < end; ++yy) {
      const int y = static_cast<int>(yy);
      for (int x = 0; x < w; ++x) {
        double s = 0.0;
        for (int d = -radius; d <= radius; ++d) s += rows(std::clamp(y + d, 0, h - 1), x);
        out(y, x) = s * norm;
      }
    }
  }, 8);
  return out;
}

Plane luma(const ImageBuffer& img) {
  Plane out(img.height(), img.width());
  auto r = img.channel(0);
  auto g = img.channel(1);
  auto b = img.channel(2);
  auto o = out.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = 0.299 * r[i] + 0.587 * g[i] + 0.114 * b[i];
  return out;
}

Plane guided_filter(const Plane& input, const Plane& guide, const GifParams& params) {
  params.validate();
  if (input.height() != guide.height() || input.width() != guide.width()) {
    throw InvalidArgument("guided_filter: input and guide dimensions differ");
  }
  const int r = params.radius;
  const Plane mean_i = box_filter(guide, r);
  const Plane mean_p = box_filter(input, r);
  const Plane corr_ii = box_filter(multiply(guide, guide), r);
  const Plane corr_ip = box_filter(multiply(guide, input), r);

  Plane a(input.height(), input.width());
  Plane b(input.height(), input.width());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double mi = mean_i.values()[k];
    const double mp = mean_p.values()[k];
    const double var = std::max(0.0, corr_ii.values()[k] - mi * mi);
    const double cov = corr_ip.values()[k] - mi * mp;
    const double denom = var + params.epsilon;
    const double ak = denom > 0.0 ? cov / denom : 0.0;
    a.values()[k] = ak;
    b.values()[k] = mp - ak * mi;
  }

  const Plane mean_a = box_filter(a, r);
  const Plane mean_b = box_filter(b, r);
  Plane out(input.height(), input.width());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.values()[k] = mean_a.values()[k] * guide.values()[k] + mean_b.values()[k];
  }
  return out;
}

ImageBuffer guided_filter(const ImageBuffer& input, const ImageBuffer& guide,
                          const GifParams& params) {
  params.validate();
  if (input.height() != guide.height() || input.width() != guide.width()) {
    throw InvalidArgument("guided_filter: input and guide dimensions differ");
  }
  const Plane g = luma(guide);
  std::vector<double> out;
  out.reserve(ImageBuffer::kChannels * input.pixel_count());
  for (int c = 0; c < ImageBuffer::kChannels; ++c) {
    const Plane q = guided_filter(input.channel_plane(c), g, params);
    for (double v : q.values()) out.push_back(std::clamp(v, 0.0, 1.0));
  }
  return ImageBuffer(input.height(), input.width(), std::move(out));
}

}  // namespace dawct
