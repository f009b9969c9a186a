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

#include "dawct/features.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "dawct/error.hpp"

namespace dawct {

FeatureTensor extract_pixel_features(const ImageBuffer& img, int patch_radius) {
  if (patch_radius < 0) throw InvalidArgument("extract_pixel_features: negative patch radius");
  if (patch_radius == 0) return to_feature_tensor(img);

  const int h = img.height();
  const int w = img.width();
  const int side = 2 * patch_radius + 1;
  const int channels = ImageBuffer::kChannels * side * side;
  const std::size_t plane = img.pixel_count();
  std::vector<double> data(plane * channels);

  int offset_index = 0;
  for (int dy = -patch_radius; dy <= patch_radius; ++dy) {
    for (int dx = -patch_radius; dx <= patch_radius; ++dx, ++offset_index) {
      for (int c = 0; c < ImageBuffer::kChannels; ++c) {
        double* dst = data.data() + (offset_index * ImageBuffer::kChannels + c) * plane;
        for (int y = 0; y < h; ++y) {
          const int sy = std::clamp(y + dy, 0, h - 1);
          for (int x = 0; x < w; ++x) {
            dst[static_cast<std::size_t>(y) * w + x] = img.at(c, sy, std::clamp(x + dx, 0, w - 1));
          }
        }
      }
    }
  }
  return FeatureTensor(channels, h, w, std::move(data));
}

int center_channel_offset(int patch_radius) {
  const int side = 2 * patch_radius + 1;
  return (side * side / 2) * ImageBuffer::kChannels;
}

ImageBuffer decode_pixel_features(const FeatureTensor& t, int patch_radius) {
  if (patch_radius < 0) throw InvalidArgument("decode_pixel_features: negative patch radius");
  const int side = 2 * patch_radius + 1;
  if (t.channels() != ImageBuffer::kChannels * side * side) {
    throw InvalidArgument("decode_pixel_features: expected " +
                          std::to_string(ImageBuffer::kChannels * side * side) +
                          " channels, got " + std::to_string(t.channels()));
  }
  const int first = center_channel_offset(patch_radius);
  std::vector<double> out;
  out.reserve(ImageBuffer::kChannels * t.pixel_count());
  for (int c = 0; c < ImageBuffer::kChannels; ++c) {
    for (double v : t.channel(first + c)) out.push_back(std::clamp(v, 0.0, 1.0));
  }
  return ImageBuffer(t.height(), t.width(), std::move(out));
}

}  // namespace dawct
