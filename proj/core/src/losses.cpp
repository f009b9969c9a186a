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

#include "dawct/losses.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "dawct/error.hpp"
#include "dawct/metrics.hpp"

namespace dawct {
namespace {

// FFTW's planner is not thread-safe; execution is.
std::mutex g_planner_mutex;

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer fftw_buffer(std::size_t n) {
  return FftwBuffer(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
}

class Dft2d {
 public:
  Dft2d(int h, int w) : n_(static_cast<std::size_t>(h) * w), in_(fftw_buffer(n_)), out_(fftw_buffer(n_)) {
    std::lock_guard<std::mutex> lock(g_planner_mutex);
    plan_ = fftw_plan_dft_2d(h, w, in_.get(), out_.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    if (!plan_) throw NumericalFailure("fft_loss: FFTW planning failed");
  }
  ~Dft2d() {
    std::lock_guard<std::mutex> lock(g_planner_mutex);
    fftw_destroy_plan(plan_);
  }
  Dft2d(const Dft2d&) = delete;
  Dft2d& operator=(const Dft2d&) = delete;

  // Magnitudes of the normalized spectrum of a real plane.
  std::vector<double> magnitudes(std::span<const double> plane) {
    for (std::size_t i = 0; i < n_; ++i) {
      in_[i][0] = plane[i];
      in_[i][1] = 0.0;
    }
    fftw_execute(plan_);
    std::vector<double> mag(n_);
    const double norm = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      mag[i] = std::hypot(out_[i][0] * norm, out_[i][1] * norm);
    }
    return mag;
  }

 private:
  std::size_t n_;
  FftwBuffer in_;
  FftwBuffer out_;
  fftw_plan plan_ = nullptr;
};

void check_same_dims(const ImageBuffer& a, const ImageBuffer& b, const char* what) {
  if (a.height() != b.height() || a.width() != b.width()) {
    throw InvalidArgument(std::string(what) + ": image dimensions differ");
  }
}

double mean_sq_diff(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s / static_cast<double>(a.size());
}

double srgb_to_linear(double c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
  constexpr double delta = 6.0 / 29.0;
  return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

}  // namespace

double mse_loss(const ImageBuffer& a, const ImageBuffer& b) {
  check_same_dims(a, b, "mse_loss");
  return mean_sq_diff(a.data(), b.data());
}

double mse_loss(const FeatureTensor& a, const FeatureTensor& b) {
  if (!a.same_shape(b)) throw InvalidArgument("mse_loss: tensor shapes differ");
  return mean_sq_diff(a.data(), b.data());
}

double ssim_loss(const ImageBuffer& a, const ImageBuffer& b) { return 1.0 - ssim(a, b); }

std::array<double, 3> srgb_to_lab(const std::array<double, 3>& rgb) {
  constexpr double xn = 0.95047;
  constexpr double yn = 1.0;
  constexpr double zn = 1.08883;
  const double r = srgb_to_linear(rgb[0]);
  const double g = srgb_to_linear(rgb[1]);
  const double b = srgb_to_linear(rgb[2]);
  const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
  const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
  const double fx = lab_f(x / xn);
  const double fy = lab_f(y / yn);
  const double fz = lab_f(z / zn);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

double lab_color_loss(const ImageBuffer& a, const ImageBuffer& b) {
  check_same_dims(a, b, "lab_color_loss");
  double s = 0.0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      const auto la = srgb_to_lab(a.pixel(y, x));
      const auto lb = srgb_to_lab(b.pixel(y, x));
      for (int c = 0; c < 3; ++c) s += (la[c] - lb[c]) * (la[c] - lb[c]);
    }
  }
  return s / (3.0 * static_cast<double>(a.pixel_count()));
}

double fft_loss(const ImageBuffer& a, const ImageBuffer& b) {
  check_same_dims(a, b, "fft_loss");
  Dft2d dft(a.height(), a.width());
  double s = 0.0;
  for (int c = 0; c < ImageBuffer::kChannels; ++c) {
    const auto ma = dft.magnitudes(a.channel(c));
    const auto mb = dft.magnitudes(b.channel(c));
    s += mean_sq_diff(ma, mb);
  }
  return s / ImageBuffer::kChannels;
}

double clip_loss(std::span<const double> emb_a, std::span<const double> emb_b) {
  if (emb_a.size() != emb_b.size()) throw InvalidArgument("clip_loss: embedding lengths differ");
  if (emb_a.empty()) throw InvalidArgument("clip_loss: empty embeddings");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < emb_a.size(); ++i) {
    dot += emb_a[i] * emb_b[i];
    na += emb_a[i] * emb_a[i];
    nb += emb_b[i] * emb_b[i];
  }
  if (na == 0.0 || nb == 0.0) throw InvalidArgument("clip_loss: zero-norm embedding");
  const double cosine = std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
  return 1.0 - cosine;
}

double tensor_l2_loss(const FeatureTensor& a, const FeatureTensor& b) {
  if (!a.same_shape(b)) throw InvalidArgument("tensor_l2_loss: tensor shapes differ");
  return mean_sq_diff(a.data(), b.data());
}

AggregateLoss aggregate_losses(const LossReport& report, int stage) {
  if (stage < 0 || stage > 4) {
    throw InvalidArgument("aggregate_losses: stage must be in 0..4, got " + std::to_string(stage));
  }
  auto need = [](const std::optional<double>& v, const char* name) {
    if (!v) throw MissingComponent(name);
    return *v;
  };
  AggregateLoss out;
  out.l0 = need(report.l_r, "l_r") + need(report.l_ssim, "l_ssim") +
           need(report.l_color, "l_color") + need(report.l_fft, "l_fft") +
           need(report.l_clip, "l_clip");
  if (stage >= 1) {
    out.lN = out.l0 + need(report.l_feat, "l_feat") + need(report.l_percept, "l_percept");
  }
  return out;
}

}  // namespace dawct
