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

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <string>

#include "dawct/error.hpp"
#include "dawct/io.hpp"

namespace dawct {
namespace {

// Decoded samples, one row-major interleaved array.
struct RawPixels {
  int width = 0;
  int height = 0;
  int channels = 0;
  int bit_depth = 0;
  std::vector<std::uint16_t> samples;
};

struct ReadCursor {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t pos;
};

struct ErrorSlot {
  char message[256];
};

void on_error(png_structp png, png_const_charp msg) {
  auto* slot = static_cast<ErrorSlot*>(png_get_error_ptr(png));
  std::snprintf(slot->message, sizeof(slot->message), "%s", msg);
  png_longjmp(png, 1);
}

void on_warning(png_structp, png_const_charp) {}

void read_from_memory(png_structp png, png_bytep out, png_size_t n) {
  auto* cur = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cur->pos + n > cur->size) png_error(png, "unexpected end of PNG data");
  std::memcpy(out, cur->data + cur->pos, n);
  cur->pos += n;
}

void write_to_vector(png_structp png, png_bytep data, png_size_t n) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + n);
}

void flush_noop(png_structp) {}

// Objects with destructors live in the callers so longjmp skips none.
bool decode_raw(std::span<const std::uint8_t> bytes, RawPixels* out,
                std::vector<std::uint8_t>* row_buffer, ErrorSlot* err) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    std::snprintf(err->message, sizeof(err->message), "not a PNG file");
    return false;
  }
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, err, on_error, on_warning);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  ReadCursor cursor{bytes.data(), bytes.size(), 0};
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_set_read_fn(png, &cursor, read_from_memory);
  png_read_info(png, info);

  const png_byte color_type = png_get_color_type(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  out->width = static_cast<int>(png_get_image_width(png, info));
  out->height = static_cast<int>(png_get_image_height(png, info));
  out->channels = png_get_channels(png, info);
  out->bit_depth = png_get_bit_depth(png, info);
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  row_buffer->resize(rowbytes);
  out->samples.resize(static_cast<std::size_t>(out->width) * out->height * out->channels);

  const std::size_t per_row = static_cast<std::size_t>(out->width) * out->channels;
  for (int y = 0; y < out->height; ++y) {
    png_read_row(png, row_buffer->data(), nullptr);
    std::uint16_t* dst = out->samples.data() + y * per_row;
    const std::uint8_t* src = row_buffer->data();
    if (out->bit_depth == 16) {
      for (std::size_t i = 0; i < per_row; ++i) {
        dst[i] = static_cast<std::uint16_t>((src[2 * i] << 8) | src[2 * i + 1]);
      }
    } else {
      for (std::size_t i = 0; i < per_row; ++i) dst[i] = src[i];
    }
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

RawPixels decode_png(std::span<const std::uint8_t> bytes) {
  RawPixels raw;
  std::vector<std::uint8_t> row;
  ErrorSlot err{};
  if (!decode_raw(bytes, &raw, &row, &err)) {
    throw FormatError(std::string("PNG decode failed: ") + err.message);
  }
  if (raw.bit_depth != 8 && raw.bit_depth != 16) {
    throw FormatError("PNG: unsupported bit depth " + std::to_string(raw.bit_depth));
  }
  return raw;
}

bool encode_raw(const RawPixels& px, std::vector<std::uint8_t>* out,
                std::vector<std::uint8_t>* row_buffer, ErrorSlot* err) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, err, on_error, on_warning);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, out, write_to_vector, flush_noop);
  const int color_type = px.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
  png_set_IHDR(png, info, static_cast<png_uint_32>(px.width), static_cast<png_uint_32>(px.height),
               px.bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t per_row = static_cast<std::size_t>(px.width) * px.channels;
  row_buffer->resize(per_row * (px.bit_depth / 8));
  for (int y = 0; y < px.height; ++y) {
    const std::uint16_t* src = px.samples.data() + y * per_row;
    std::uint8_t* dst = row_buffer->data();
    if (px.bit_depth == 16) {
      for (std::size_t i = 0; i < per_row; ++i) {
        dst[2 * i] = static_cast<std::uint8_t>(src[i] >> 8);
        dst[2 * i + 1] = static_cast<std::uint8_t>(src[i] & 0xff);
      }
    } else {
      for (std::size_t i = 0; i < per_row; ++i) dst[i] = static_cast<std::uint8_t>(src[i]);
    }
    png_write_row(png, row_buffer->data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

std::vector<std::uint8_t> encode(const RawPixels& px) {
  std::vector<std::uint8_t> out;
  std::vector<std::uint8_t> row;
  ErrorSlot err{};
  if (!encode_raw(px, &out, &row, &err)) {
    throw FormatError(std::string("PNG encode failed: ") + err.message);
  }
  return out;
}

void check_bit_depth(int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16) {
    throw InvalidArgument("PNG bit depth must be 8 or 16, got " + std::to_string(bit_depth));
  }
}

std::uint16_t quantize(double v, double max) {
  return static_cast<std::uint16_t>(std::lround(std::clamp(v, 0.0, 1.0) * max));
}

}  // namespace

LoadedImage decode_png_image(std::span<const std::uint8_t> bytes) {
  const RawPixels raw = decode_png(bytes);
  const double max = raw.bit_depth == 16 ? 65535.0 : 255.0;
  const std::size_t n = static_cast<std::size_t>(raw.width) * raw.height;
  std::vector<double> planar(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) {
      const int src_c = raw.channels >= 3 ? c : 0;
      planar[c * n + i] = raw.samples[i * raw.channels + src_c] / max;
    }
  }
  return {ImageBuffer(raw.height, raw.width, std::move(planar)), raw.bit_depth};
}

LoadedImage load_image(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return decode_png_image(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_png(const ImageBuffer& img, int bit_depth) {
  check_bit_depth(bit_depth);
  const double max = bit_depth == 16 ? 65535.0 : 255.0;
  RawPixels px{img.width(), img.height(), 3, bit_depth, {}};
  const std::size_t n = img.pixel_count();
  px.samples.resize(3 * n);
  for (int c = 0; c < 3; ++c) {
    const auto ch = img.channel(c);
    for (std::size_t i = 0; i < n; ++i) px.samples[i * 3 + c] = quantize(ch[i], max);
  }
  return encode(px);
}

std::vector<std::uint8_t> encode_png_gray(const Plane& plane, int bit_depth) {
  check_bit_depth(bit_depth);
  const double max = bit_depth == 16 ? 65535.0 : 255.0;
  RawPixels px{plane.width(), plane.height(), 1, bit_depth, {}};
  px.samples.reserve(plane.size());
  for (double v : plane.values()) px.samples.push_back(quantize(v, max));
  return encode(px);
}

void save_image(const std::filesystem::path& path, const ImageBuffer& img, int bit_depth) {
  const auto bytes = encode_png(img, bit_depth);
  write_file_atomic(path, bytes);
}

DepthMap load_depth(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kTensorMagic, 4) == 0) {
    const FeatureTensor t = to_feature_tensor(decode_tensor(bytes));
    if (t.channels() != 1) {
      throw FormatError(path.string() + ": depth tensor must have one channel");
    }
    std::vector<double> v(t.data().begin(), t.data().end());
    for (double x : v) {
      if (!(x >= 0.0 && x <= 1.0)) throw FormatError(path.string() + ": depth outside [0,1]");
    }
    return DepthMap(Plane(t.height(), t.width(), std::move(v)));
  }
  RawPixels raw;
  try {
    raw = decode_png(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  const double max = raw.bit_depth == 16 ? 65535.0 : 255.0;
  Plane p(raw.height, raw.width);
  for (std::size_t i = 0; i < p.size(); ++i) p.values()[i] = raw.samples[i * raw.channels] / max;
  return DepthMap(std::move(p));
}

}  // namespace dawct
