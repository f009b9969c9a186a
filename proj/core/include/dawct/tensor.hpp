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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dawct {

// Single-channel H x W raster of doubles, row-major. The working type for
// box filters, luma planes and any map that carries no range invariant.
class Plane {
 public:
  Plane() = default;
  Plane(int height, int width, double fill = 0.0);
  Plane(int height, int width, std::vector<double> values);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator()(int y, int x) const noexcept {
    return values_[static_cast<std::size_t>(y) * width_ + x];
  }
  double& operator()(int y, int x) noexcept {
    return values_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  bool operator==(const Plane&) const = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<double> values_;
};

// H x W x 3 image, channels planar (R, G, B), every value in [0, 1].
class ImageBuffer {
 public:
  static constexpr int kChannels = 3;

  ImageBuffer() = default;
  ImageBuffer(int height, int width, std::vector<double> planar);
  // Constant-color image.
  ImageBuffer(int height, int width, std::array<double, 3> rgb);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(height_) * width_;
  }

  double at(int c, int y, int x) const noexcept {
    return data_[(static_cast<std::size_t>(c) * height_ + y) * width_ + x];
  }
  std::array<double, 3> pixel(int y, int x) const noexcept {
    return {at(0, y, x), at(1, y, x), at(2, y, x)};
  }
  std::span<const double> channel(int c) const noexcept {
    return std::span<const double>(data_).subspan(
        static_cast<std::size_t>(c) * pixel_count(), pixel_count());
  }
  Plane channel_plane(int c) const;
  std::span<const double> data() const noexcept { return data_; }

  bool operator==(const ImageBuffer&) const = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

// Relative depth, larger value = farther, every value in [0, 1].
class DepthMap {
 public:
  DepthMap() = default;
  explicit DepthMap(Plane values);
  DepthMap(int height, int width, double fill);

  int height() const noexcept { return plane_.height(); }
  int width() const noexcept { return plane_.width(); }
  std::size_t size() const noexcept { return plane_.size(); }
  double operator()(int y, int x) const noexcept { return plane_(y, x); }
  std::span<const double> values() const noexcept { return plane_.values(); }
  const Plane& plane() const noexcept { return plane_; }

 private:
  Plane plane_;
};

// Per-pixel blend weights in [0, 1].
class WeightMap {
 public:
  WeightMap() = default;
  explicit WeightMap(Plane values);
  WeightMap(int height, int width, double fill);

  int height() const noexcept { return plane_.height(); }
  int width() const noexcept { return plane_.width(); }
  std::size_t size() const noexcept { return plane_.size(); }
  double operator()(int y, int x) const noexcept { return plane_(y, x); }
  std::span<const double> values() const noexcept { return plane_.values(); }
  const Plane& plane() const noexcept { return plane_; }

 private:
  Plane plane_;
};

// Pixel selection mask (1 = selected), row-major.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int height, int width, bool fill);
  BinaryMask(int height, int width, std::vector<std::uint8_t> bits);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t size() const noexcept { return bits_.size(); }
  bool operator()(int y, int x) const noexcept {
    return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  bool selected(std::size_t i) const noexcept { return bits_[i] != 0; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::size_t count() const noexcept;

  // Elementwise AND of two masks with equal dimensions.
  BinaryMask operator&(const BinaryMask& other) const;
  bool operator==(const BinaryMask&) const = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<std::uint8_t> bits_;
};

// C x H x W feature map, planar, finite values only.
class FeatureTensor {
 public:
  FeatureTensor() = default;
  FeatureTensor(int channels, int height, int width, std::vector<double> data);
  FeatureTensor(int channels, int height, int width, double fill);

  int channels() const noexcept { return channels_; }
  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(height_) * width_;
  }
  std::size_t size() const noexcept { return data_.size(); }

  double at(int c, int y, int x) const noexcept {
    return data_[(static_cast<std::size_t>(c) * height_ + y) * width_ + x];
  }
  std::span<const double> channel(int c) const noexcept {
    return std::span<const double>(data_).subspan(
        static_cast<std::size_t>(c) * pixel_count(), pixel_count());
  }
  std::span<const double> data() const noexcept { return data_; }

  bool same_shape(const FeatureTensor& o) const noexcept {
    return channels_ == o.channels_ && height_ == o.height_ && width_ == o.width_;
  }
  bool operator==(const FeatureTensor&) const = default;

 private:
  int channels_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

// The 3 image channels as a 3-channel tensor, and back (values clamped to
// [0, 1] on the way back).
FeatureTensor to_feature_tensor(const ImageBuffer& img);
ImageBuffer to_image(const FeatureTensor& t);

}  // namespace dawct
