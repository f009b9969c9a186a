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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "dawct/tensor.hpp"

namespace dawct {

// ---------------------------------------------------------------------------
// PNG images

struct LoadedImage {
  ImageBuffer image;
  int bit_depth = 8;  // 8 or 16, as stored in the file
};

// Gray, gray+alpha, RGB, RGBA and palette PNGs at 8 or 16 bits. Gray is
// replicated to three channels; alpha is dropped. Values map linearly to
// [0, 1] (v / 255 or v / 65535).
LoadedImage load_image(const std::filesystem::path& path);
LoadedImage decode_png_image(std::span<const std::uint8_t> bytes);

// RGB PNG at 8 or 16 bits, values rounded to nearest.
std::vector<std::uint8_t> encode_png(const ImageBuffer& img, int bit_depth = 8);
void save_image(const std::filesystem::path& path, const ImageBuffer& img, int bit_depth = 8);

// Single-channel PNG (used for masks and weight maps).
std::vector<std::uint8_t> encode_png_gray(const Plane& plane, int bit_depth = 16);

// Depth maps: a grayscale PNG (v / 65535 for 16-bit, v / 255 for 8-bit;
// color PNGs use their first channel) or a UST1 tensor with one channel
// and values in [0, 1].
DepthMap load_depth(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// UST1 tensor files
//
//   bytes 0-3   magic 0x55 0x53 0x54 0x31 ("UST1")
//   u32 LE      ndim
//   ndim x u32  dims (C, H, W for feature maps; length for embeddings)
//   f32 LE      values, row-major

inline constexpr std::uint8_t kTensorMagic[4] = {0x55, 0x53, 0x54, 0x31};

struct RawTensor {
  std::vector<std::uint32_t> dims;
  std::vector<float> values;

  std::size_t element_count() const noexcept;
};

std::vector<std::uint8_t> encode_tensor(const RawTensor& t);
RawTensor decode_tensor(std::span<const std::uint8_t> bytes);

RawTensor read_tensor_file(const std::filesystem::path& path);
void write_tensor_file(const std::filesystem::path& path, const RawTensor& t);

// 3-D (C, H, W) tensors, or 2-D (H, W) read as one channel.
FeatureTensor to_feature_tensor(const RawTensor& t);
RawTensor to_raw_tensor(const FeatureTensor& t);
// 1-D embeddings.
std::vector<double> to_vector(const RawTensor& t);

// ---------------------------------------------------------------------------
// Files

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace dawct
