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

#include "dawct/color_stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dawct/error.hpp"

namespace dawct {

ColorSignature color_signature(const ImageBuffer& img) {
  ColorSignature sig;
  const double n = static_cast<double>(img.pixel_count());
  for (int c = 0; c < ImageBuffer::kChannels; ++c) {
    const auto ch = img.channel(c);
    double s = 0.0;
    for (double v : ch) s += v;
    const double mean = s / n;
    double ss = 0.0;
    for (double v : ch) ss += (v - mean) * (v - mean);
    sig.values[c] = mean;
    sig.values[3 + c] = std::sqrt(ss / n);
  }
  const double red = std::max(sig.values[0], kRatioFloor);
  sig.values[6] = sig.values[2] / red;
  sig.values[7] = sig.values[1] / red;
  return sig;
}

PcaResult pca(const std::vector<ColorSignature>& signatures, std::size_t n_components) {
  constexpr std::size_t d = ColorSignature::kSize;
  const std::size_t n = signatures.size();
  if (n < 2) throw InvalidArgument("pca: need at least 2 signatures, got " + std::to_string(n));
  if (n_components < 1 || n_components > d) {
    throw InvalidArgument("pca: n_components must be in 1..8");
  }

  PcaResult out;
  out.mean.assign(d, 0.0);
  out.scale.assign(d, 1.0);
  for (const auto& s : signatures) {
    for (std::size_t j = 0; j < d; ++j) out.mean[j] += s.values[j];
  }
  for (double& m : out.mean) m /= static_cast<double>(n);
  for (std::size_t j = 0; j < d; ++j) {
    double ss = 0.0;
    for (const auto& s : signatures) ss += (s.values[j] - out.mean[j]) * (s.values[j] - out.mean[j]);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    // Relative floor: dimensions constant up to rounding are not rescaled.
    if (sd > 1e-12 * std::max(1.0, std::abs(out.mean[j]))) out.scale[j] = sd;
  }

  Matrix z(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      z(i, j) = (signatures[i].values[j] - out.mean[j]) / out.scale[j];
    }
  }
  Matrix cov(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += z(i, a) * z(i, b);
      cov(a, b) = cov(b, a) = s / static_cast<double>(n - 1);
    }
  }

  const auto eig = sym_eigen(cov);
  double total = 0.0;
  for (double v : eig.values) total += std::max(v, 0.0);

  out.components = Matrix(d, n_components);
  out.explained_variance_ratio.assign(n_components, 0.0);
  for (std::size_t k = 0; k < n_components; ++k) {
    for (std::size_t j = 0; j < d; ++j) out.components(j, k) = eig.vectors(j, k);
    out.explained_variance_ratio[k] = total > 0.0 ? std::max(eig.values[k], 0.0) / total : 0.0;
  }
  out.projections = z * out.components;
  return out;
}

}  // namespace dawct
