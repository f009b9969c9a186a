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

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>
#include <unistd.h>

#include "dawct/error.hpp"
#include "dawct/io.hpp"

namespace dawct {
namespace {

constexpr std::size_t kMaxDims = 8;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t off) {
  return static_cast<std::uint32_t>(b[off]) | (static_cast<std::uint32_t>(b[off + 1]) << 8) |
         (static_cast<std::uint32_t>(b[off + 2]) << 16) |
         (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

}  // namespace

std::size_t RawTensor::element_count() const noexcept {
  std::size_t n = dims.empty() ? 0 : 1;
  for (auto d : dims) n *= d;
  return n;
}

std::vector<std::uint8_t> encode_tensor(const RawTensor& t) {
  if (t.dims.empty() || t.dims.size() > kMaxDims) {
    throw InvalidArgument("encode_tensor: ndim must be in 1..8");
  }
  if (t.values.size() != t.element_count()) {
    throw InvalidArgument("encode_tensor: value count does not match dims");
  }
  std::vector<std::uint8_t> out(std::begin(kTensorMagic), std::end(kTensorMagic));
  out.reserve(8 + 4 * t.dims.size() + 4 * t.values.size());
  put_u32(out, static_cast<std::uint32_t>(t.dims.size()));
  for (auto d : t.dims) put_u32(out, d);
  for (float v : t.values) put_u32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

RawTensor decode_tensor(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kTensorMagic, 4) != 0) {
    throw FormatError("tensor: bad magic (expected UST1)");
  }
  const std::uint32_t ndim = get_u32(bytes, 4);
  if (ndim == 0 || ndim > kMaxDims) {
    throw FormatError("tensor: unsupported ndim " + std::to_string(ndim));
  }
  const std::size_t header = 8 + 4 * static_cast<std::size_t>(ndim);
  if (bytes.size() < header) throw FormatError("tensor: truncated header");

  RawTensor t;
  std::size_t count = 1;
  for (std::uint32_t i = 0; i < ndim; ++i) {
    const std::uint32_t d = get_u32(bytes, 8 + 4 * i);
    if (d == 0) throw FormatError("tensor: zero-length dimension");
    if (count > std::numeric_limits<std::size_t>::max() / 4 / d) {
      throw FormatError("tensor: dimensions overflow");
    }
    count *= d;
    t.dims.push_back(d);
  }
  if (bytes.size() != header + 4 * count) {
    throw FormatError("tensor: payload is " + std::to_string(bytes.size() - header) +
                      " bytes, expected " + std::to_string(4 * count));
  }
  t.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    t.values[i] = std::bit_cast<float>(get_u32(bytes, header + 4 * i));
  }
  return t;
}

RawTensor read_tensor_file(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return decode_tensor(bytes);
}

void write_tensor_file(const std::filesystem::path& path, const RawTensor& t) {
  const auto bytes = encode_tensor(t);
  write_file_atomic(path, bytes);
}

FeatureTensor to_feature_tensor(const RawTensor& t) {
  int c;
  int h;
  int w;
  if (t.dims.size() == 3) {
    c = static_cast<int>(t.dims[0]);
    h = static_cast<int>(t.dims[1]);
    w = static_cast<int>(t.dims[2]);
  } else if (t.dims.size() == 2) {
    c = 1;
    h = static_cast<int>(t.dims[0]);
    w = static_cast<int>(t.dims[1]);
  } else {
    throw FormatError("tensor: expected 2 or 3 dimensions for a feature map, got " +
                      std::to_string(t.dims.size()));
  }
  std::vector<double> v(t.values.begin(), t.values.end());
  for (double x : v) {
    if (!std::isfinite(x)) throw FormatError("tensor: non-finite value");
  }
  return FeatureTensor(c, h, w, std::move(v));
}

RawTensor to_raw_tensor(const FeatureTensor& t) {
  RawTensor r;
  r.dims = {static_cast<std::uint32_t>(t.channels()), static_cast<std::uint32_t>(t.height()),
            static_cast<std::uint32_t>(t.width())};
  r.values.reserve(t.size());
  for (double v : t.data()) r.values.push_back(static_cast<float>(v));
  return r;
}

std::vector<double> to_vector(const RawTensor& t) {
  if (t.dims.size() != 1) {
    throw FormatError("tensor: expected a 1-D embedding, got " + std::to_string(t.dims.size()) +
                      " dimensions");
  }
  std::vector<double> v(t.values.begin(), t.values.end());
  for (double x : v) {
    if (!std::isfinite(x)) throw FormatError("tensor: non-finite value");
  }
  return v;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading " + path.string());
  return bytes;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("error writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename temporary file onto " + path.string());
  }
}

}  // namespace dawct
