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

#include "dawct/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "dawct/error.hpp"

namespace dawct {
namespace {

void check_dims(int height, int width, const char* what) {
  if (height < 1 || width < 1) {
    throw InvalidArgument(std::string(what) + ": dimensions must be >= 1, got " +
                          std::to_string(height) + "x" + std::to_string(width));
  }
}

void check_size(std::size_t got, std::size_t expected, const char* what) {
  if (got != expected) {
    throw InvalidArgument(std::string(what) + ": expected " + std::to_string(expected) +
                          " values, got " + std::to_string(got));
  }
}

void check_unit_range(std::span<const double> v, const char* what) {
  for (double x : v) {
    // Written so that NaN fails too.
    if (!(x >= 0.0 && x <= 1.0)) {
      throw InvalidArgument(std::string(what) + ": value outside [0,1]: " + std::to_string(x));
    }
  }
}

}  // namespace

Plane::Plane(int height, int width, double fill) : height_(height), width_(width) {
  check_dims(height, width, "Plane");
  values_.assign(static_cast<std::size_t>(height) * width, fill);
}

Plane::Plane(int height, int width, std::vector<double> values)
    : height_(height), width_(width), values_(std::move(values)) {
  check_dims(height, width, "Plane");
  check_size(values_.size(), static_cast<std::size_t>(height) * width, "Plane");
}

ImageBuffer::ImageBuffer(int height, int width, std::vector<double> planar)
    : height_(height), width_(width), data_(std::move(planar)) {
  check_dims(height, width, "ImageBuffer");
  check_size(data_.size(), static_cast<std::size_t>(kChannels) * height * width, "ImageBuffer");
  check_unit_range(data_, "ImageBuffer");
}

ImageBuffer::ImageBuffer(int height, int width, std::array<double, 3> rgb)
    : height_(height), width_(width) {
  check_dims(height, width, "ImageBuffer");
  check_unit_range(rgb, "ImageBuffer");
  const std::size_t n = pixel_count();
  data_.resize(kChannels * n);
  for (int c = 0; c < kChannels; ++c) {
    std::fill_n(data_.begin() + c * n, n, rgb[c]);
  }
}

Plane ImageBuffer::channel_plane(int c) const {
  auto ch = channel(c);
  return Plane(height_, width_, std::vector<double>(ch.begin(), ch.end()));
}

DepthMap::DepthMap(Plane values) : plane_(std::move(values)) {
  check_dims(plane_.height(), plane_.width(), "DepthMap");
  check_unit_range(plane_.values(), "DepthMap");
}

DepthMap::DepthMap(int height, int width, double fill) : DepthMap(Plane(height, width, fill)) {}

WeightMap::WeightMap(Plane values) : plane_(std::move(values)) {
  check_dims(plane_.height(), plane_.width(), "WeightMap");
  check_unit_range(plane_.values(), "WeightMap");
}

WeightMap::WeightMap(int height, int width, double fill)
    : WeightMap(Plane(height, width, fill)) {}

BinaryMask::BinaryMask(int height, int width, bool fill) : height_(height), width_(width) {
  check_dims(height, width, "BinaryMask");
  bits_.assign(static_cast<std::size_t>(height) * width, fill ? 1 : 0);
}

BinaryMask::BinaryMask(int height, int width, std::vector<std::uint8_t> bits)
    : height_(height), width_(width), bits_(std::move(bits)) {
  check_dims(height, width, "BinaryMask");
  check_size(bits_.size(), static_cast<std::size_t>(height) * width, "BinaryMask");
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

BinaryMask BinaryMask::operator&(const BinaryMask& other) const {
  if (height_ != other.height_ || width_ != other.width_) {
    throw InvalidArgument("BinaryMask: AND of masks with different dimensions");
  }
  std::vector<std::uint8_t> out(bits_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = bits_[i] & other.bits_[i];
  return BinaryMask(height_, width_, std::move(out));
}

FeatureTensor::FeatureTensor(int channels, int height, int width, std::vector<double> data)
    : channels_(channels), height_(height), width_(width), data_(std::move(data)) {
  if (channels < 1) throw InvalidArgument("FeatureTensor: channels must be >= 1");
  check_dims(height, width, "FeatureTensor");
  check_size(data_.size(), static_cast<std::size_t>(channels) * height * width, "FeatureTensor");
  for (double v : data_) {
    if (!std::isfinite(v)) throw InvalidArgument("FeatureTensor: non-finite value");
  }
}

FeatureTensor::FeatureTensor(int channels, int height, int width, double fill)
    : FeatureTensor(channels, height, width,
                    std::vector<double>(static_cast<std::size_t>(std::max(channels, 0)) *
                                            std::max(height, 0) * std::max(width, 0),
                                        fill)) {}

FeatureTensor to_feature_tensor(const ImageBuffer& img) {
  auto d = img.data();
  return FeatureTensor(ImageBuffer::kChannels, img.height(), img.width(),
                       std::vector<double>(d.begin(), d.end()));
}

ImageBuffer to_image(const FeatureTensor& t) {
  if (t.channels() != ImageBuffer::kChannels) {
    throw InvalidArgument("to_image: tensor must have 3 channels, got " +
                          std::to_string(t.channels()));
  }
  std::vector<double> v(t.data().begin(), t.data().end());
  for (double& x : v) x = std::clamp(x, 0.0, 1.0);
  return ImageBuffer(t.height(), t.width(), std::move(v));
}

}  // namespace dawct
