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

#include "dawct/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dawct/error.hpp"
#include "dawct/guided_filter.hpp"
#include "dawct/resample.hpp"

namespace dawct {
namespace {

void check_same_dims(int ha, int wa, int hb, int wb, const char* what) {
  if (ha != hb || wa != wb) throw InvalidArgument(std::string(what) + ": image dimensions differ");
}

std::vector<double> gaussian_kernel(int size, double sigma) {
  std::vector<double> k(static_cast<std::size_t>(size));
  const int half = size / 2;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    const double x = i - half;
    k[i] = std::exp(-(x * x) / (2.0 * sigma * sigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Separable 'valid' convolution.
Plane filter_valid(const Plane& src, const std::vector<double>& k) {
  const int n = static_cast<int>(k.size());
  const int h = src.height();
  const int w = src.width();
  const int ow = w - n + 1;
  const int oh = h - n + 1;
  Plane rows(h, ow);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += k[i] * src(y, x + i);
      rows(y, x) = s;
    }
  }
  Plane out(oh, ow);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += k[i] * rows(y + i, x);
      out(y, x) = s;
    }
  }
  return out;
}

Plane product(const Plane& a, const Plane& b) {
  Plane out(a.height(), a.width());
  for (std::size_t i = 0; i < out.size(); ++i) out.values()[i] = a.values()[i] * b.values()[i];
  return out;
}

Plane gradient_magnitude(const Plane& p) {
  const int h = p.height();
  const int w = p.width();
  auto at = [&](int y, int x) { return p(std::clamp(y, 0, h - 1), std::clamp(x, 0, w - 1)); };
  Plane out(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double gx = 0.0;
      double gy = 0.0;
      for (int d = -1; d <= 1; ++d) {
        gx += at(y + d, x + 1) - at(y + d, x - 1);
        gy += at(y + 1, x + d) - at(y - 1, x + d);
      }
      gx /= 3.0;
      gy /= 3.0;
      out(y, x) = std::sqrt(gx * gx + gy * gy);
    }
  }
  return out;
}

}  // namespace

double ssim(const Plane& a, const Plane& b, const SsimParams& params) {
  check_same_dims(a.height(), a.width(), b.height(), b.width(), "ssim");
  if (params.window < 1 || params.window % 2 == 0) {
    throw InvalidArgument("ssim: window must be odd and >= 1");
  }
  int window = std::min(params.window, std::min(a.height(), a.width()));
  if (window % 2 == 0) --window;
  const auto k = gaussian_kernel(window, params.sigma);
  const double c1 = (params.k1 * 1.0) * (params.k1 * 1.0);
  const double c2 = (params.k2 * 1.0) * (params.k2 * 1.0);

  const Plane mu_a = filter_valid(a, k);
  const Plane mu_b = filter_valid(b, k);
  const Plane e_aa = filter_valid(product(a, a), k);
  const Plane e_bb = filter_valid(product(b, b), k);
  const Plane e_ab = filter_valid(product(a, b), k);

  double sum = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a.values()[i];
    const double mb = mu_b.values()[i];
    const double va = e_aa.values()[i] - ma * ma;
    const double vb = e_bb.values()[i] - mb * mb;
    const double cov = e_ab.values()[i] - ma * mb;
    const double num = (2.0 * ma * mb + c1) * (2.0 * cov + c2);
    const double den = (ma * ma + mb * mb + c1) * (va + vb + c2);
    sum += num / den;
  }
  return sum / static_cast<double>(mu_a.size());
}

double ssim(const ImageBuffer& a, const ImageBuffer& b, const SsimParams& params) {
  check_same_dims(a.height(), a.width(), b.height(), b.width(), "ssim");
  return ssim(luma(a), luma(b), params);
}

double gmsd(const ImageBuffer& a, const ImageBuffer& b) {
  check_same_dims(a.height(), a.width(), b.height(), b.width(), "gmsd");
  constexpr double c = 0.0026;
  const Plane ga = gradient_magnitude(luma(a));
  const Plane gb = gradient_magnitude(luma(b));
  std::vector<double> gms(ga.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < gms.size(); ++i) {
    const double x = ga.values()[i];
    const double y = gb.values()[i];
    gms[i] = (2.0 * x * y + c) / (x * x + y * y + c);
    mean += gms[i];
  }
  mean /= static_cast<double>(gms.size());
  double var = 0.0;
  for (double g : gms) var += (g - mean) * (g - mean);
  return std::sqrt(var / static_cast<double>(gms.size()));
}

double rmse_255(const ImageBuffer& a, const ImageBuffer& b) {
  check_same_dims(a.height(), a.width(), b.height(), b.width(), "rmse");
  const auto x = a.data();
  const auto y = b.data();
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = 255.0 * (x[i] - y[i]);
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(x.size()));
}

double psnr_from_rmse(double rmse) {
  if (rmse <= 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(255.0 / rmse);
}

MetricReport evaluate(const ImageBuffer& a, const ImageBuffer& b, bool resample_b) {
  if (a.height() != b.height() || a.width() != b.width()) {
    if (!resample_b) throw InvalidArgument("evaluate: image dimensions differ");
    return evaluate(a, resize_bilinear(b, a.height(), a.width()), false);
  }
  MetricReport r;
  r.rmse = rmse_255(a, b);
  r.psnr = psnr_from_rmse(r.rmse);
  r.ssim = ssim(a, b);
  r.gmsd = gmsd(a, b);
  return r;
}

}  // namespace dawct
