// Copyright 2026 The faceparse Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "faceparse/image_io.hpp"

#include <png.h>

#include <atomic>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

namespace faceparse {
namespace {

[[noreturn]] void io_error(const std::string& what) { throw Error(ErrorCode::kIo, what); }

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

struct DecodedPng {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<std::uint8_t> pixels;
};

struct ReadCursor {
  const std::vector<std::uint8_t>* bytes;
  std::size_t offset;
};

void png_error_fn(png_structp png, png_const_charp msg) {
  auto* message = static_cast<std::string*>(png_get_error_ptr(png));
  if (message != nullptr) *message = msg;
  png_longjmp(png, 1);
}

void png_warning_fn(png_structp, png_const_charp) {}

// libpng reports errors through longjmp, so nothing with a destructor may
// be live between setjmp and the png calls below.
DecodedPng decode_png(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) io_error("not a PNG file");
  std::string message;
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, &message, png_error_fn, png_warning_fn);
  if (png == nullptr) io_error("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  DecodedPng out;
  ReadCursor cursor{&bytes, 0};
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    io_error("PNG decode failed: " + message);
  }
  png_set_read_fn(png, &cursor, [](png_structp p, png_bytep data, png_size_t length) {
    auto* c = static_cast<ReadCursor*>(png_get_io_ptr(p));
    if (c->offset + length > c->bytes->size()) png_error(p, "truncated PNG data");
    std::memcpy(data, c->bytes->data() + c->offset, length);
    c->offset += length;
  });
  png_read_info(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  if (bit_depth == 16) png_set_strip_16(png);
  if (bit_depth < 8) png_set_packing(png);
  png_read_update_info(png, info);
  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  out.channels = png_get_channels(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  out.pixels.resize(stride * static_cast<std::size_t>(out.height));
  rows.resize(static_cast<std::size_t>(out.height));
  for (int y = 0; y < out.height; ++y) rows[y] = out.pixels.data() + stride * y;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

bool is_pgm(const std::vector<std::uint8_t>& bytes) {
  return bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5';
}

// Binary PGM header: "P5 <w> <h> <maxval>" with optional # comments.
std::size_t parse_pgm_header(const std::vector<std::uint8_t>& bytes, int& w, int& h,
                             int& maxval) {
  std::size_t pos = 2;
  int fields[3] = {0, 0, 0};
  for (int f = 0; f < 3; ++f) {
    while (pos < bytes.size()) {
      if (std::isspace(bytes[pos])) {
        ++pos;
      } else if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
    if (pos >= bytes.size() || !std::isdigit(bytes[pos])) io_error("malformed PGM header");
    long v = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      v = v * 10 + (bytes[pos] - '0');
      if (v > (1 << 24)) io_error("PGM dimension too large");
      ++pos;
    }
    fields[f] = static_cast<int>(v);
  }
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) io_error("malformed PGM header");
  w = fields[0];
  h = fields[1];
  maxval = fields[2];
  return pos + 1;
}

Gray8Image decode_pgm(const std::vector<std::uint8_t>& bytes) {
  int w = 0, h = 0, maxval = 0;
  const std::size_t offset = parse_pgm_header(bytes, w, h, maxval);
  if (maxval > 255 || maxval < 1) io_error("only 8-bit PGM is supported");
  const std::size_t n = static_cast<std::size_t>(w) * h;
  if (bytes.size() < offset + n) io_error("truncated PGM data");
  Gray8Image img{w, h, std::vector<std::uint8_t>(bytes.begin() + static_cast<long>(offset),
                                                  bytes.begin() + static_cast<long>(offset + n))};
  return img;
}

std::vector<std::uint8_t> encode_pgm(const Gray8Image& image) {
  const std::string header =
      "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels.begin(), image.pixels.end());
  return out;
}

void check_image(const Gray8Image& image) {
  if (image.width < 0 || image.height < 0 ||
      image.pixels.size() != static_cast<std::size_t>(image.width) * image.height) {
    throw Error(ErrorCode::kDimensionMismatch, "image buffer does not match its dimensions");
  }
}

}  // namespace

std::vector<std::uint8_t> encode_png_gray8(const Gray8Image& image) {
  check_image(image);
  if (image.width == 0 || image.height == 0) io_error("cannot encode an empty PNG");
  std::vector<std::uint8_t> out;
  std::string message;
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, &message, png_error_fn, png_warning_fn);
  if (png == nullptr) io_error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  std::vector<png_bytep> rows(static_cast<std::size_t>(image.height));
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    io_error("PNG encode failed: " + message);
  }
  png_set_write_fn(
      png, &out,
      [](png_structp p, png_bytep data, png_size_t length) {
        auto* sink = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(p));
        sink->insert(sink->end(), data, data + length);
      },
      nullptr);
  png_set_compression_level(png, 6);
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_NONE);
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
               static_cast<png_uint_32>(image.height), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_BASE, PNG_FILTER_TYPE_BASE);
  png_write_info(png, info);
  for (int y = 0; y < image.height; ++y) {
    rows[y] = const_cast<png_bytep>(image.pixels.data() +
                                    static_cast<std::size_t>(y) * image.width);
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

Gray8Image decode_png_gray8(const std::vector<std::uint8_t>& bytes) {
  DecodedPng png = decode_png(bytes);
  if (png.channels != 1) {
    io_error("expected a single-channel PNG, found " + std::to_string(png.channels) +
             " channels");
  }
  return {png.width, png.height, std::move(png.pixels)};
}

Gray8Image read_gray8(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  try {
    return is_pgm(bytes) ? decode_pgm(bytes) : decode_png_gray8(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_gray8(const std::filesystem::path& path, const Gray8Image& image) {
  check_image(image);
  write_file_atomic(path, lower_extension(path) == ".pgm" ? encode_pgm(image)
                                                          : encode_png_gray8(image));
}

LabelMap read_label_map(const std::filesystem::path& path) {
  Gray8Image img = read_gray8(path);
  try {
    return LabelMap(img.width, img.height, std::move(img.pixels));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_label_map(const std::filesystem::path& path, const LabelMap& labels) {
  const auto data = labels.data();
  write_gray8(path, {labels.width(), labels.height(),
                     std::vector<std::uint8_t>(data.begin(), data.end())});
}

Mask read_mask(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  Mask mask;
  if (is_pgm(bytes)) {
    const Gray8Image img = decode_pgm(bytes);
    mask = Mask(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) mask[i] = img.pixels[i] ? 1 : 0;
    return mask;
  }
  DecodedPng png;
  try {
    png = decode_png(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
  // Colour channels only; a trailing alpha channel is ignored.
  const int colour = (png.channels == 2 || png.channels == 4) ? png.channels - 1 : png.channels;
  mask = Mask(png.width, png.height);
  for (std::size_t i = 0; i < mask.size(); ++i) {
    bool set = false;
    for (int c = 0; c < colour; ++c) set = set || png.pixels[i * png.channels + c] != 0;
    mask[i] = set ? 1 : 0;
  }
  return mask;
}

void write_boundary_map(const std::filesystem::path& path, const BoundaryMap& boundary) {
  Gray8Image img{boundary.width(), boundary.height(),
                 std::vector<std::uint8_t>(boundary.size())};
  for (std::size_t i = 0; i < boundary.size(); ++i) img.pixels[i] = boundary[i] ? 255 : 0;
  write_gray8(path, img);
}

std::pair<int, int> probe_image_size(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  const auto be16 = [&](std::size_t i) { return (bytes[i] << 8) | bytes[i + 1]; };
  if (bytes.size() >= 24 && png_sig_cmp(bytes.data(), 0, 8) == 0) {
    const auto be32 = [&](std::size_t i) {
      return static_cast<int>((static_cast<std::uint32_t>(bytes[i]) << 24) |
                              (static_cast<std::uint32_t>(bytes[i + 1]) << 16) |
                              (static_cast<std::uint32_t>(bytes[i + 2]) << 8) | bytes[i + 3]);
    };
    return {be32(16), be32(20)};
  }
  if (is_pgm(bytes)) {
    int w = 0, h = 0, maxval = 0;
    parse_pgm_header(bytes, w, h, maxval);
    return {w, h};
  }
  if (bytes.size() >= 4 && bytes[0] == 0xFF && bytes[1] == 0xD8) {
    std::size_t pos = 2;
    while (pos + 4 <= bytes.size()) {
      if (bytes[pos] != 0xFF) io_error(path.string() + ": corrupt JPEG marker stream");
      const int marker = bytes[pos + 1];
      if (marker == 0xFF) {
        ++pos;
        continue;
      }
      if (marker == 0xD8 || (marker >= 0xD0 && marker <= 0xD7) || marker == 0x01) {
        pos += 2;
        continue;
      }
      const std::size_t length = static_cast<std::size_t>(be16(pos + 2));
      const bool sof = marker >= 0xC0 && marker <= 0xCF && marker != 0xC4 &&
                       marker != 0xC8 && marker != 0xCC;
      if (sof) {
        if (pos + 9 > bytes.size()) break;
        return {be16(pos + 7), be16(pos + 5)};
      }
      pos += 2 + length;
    }
    io_error(path.string() + ": no frame header found in JPEG");
  }
  io_error(path.string() + ": unsupported image format");
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) io_error("read failed: " + path.string());
  return bytes;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& bytes) {
  static std::atomic<unsigned long> counter{0};
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) io_error("cannot create " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      io_error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    io_error("cannot rename onto " + path.string());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  write_file_atomic(path, std::vector<std::uint8_t>(text.begin(), text.end()));
}

}  // namespace faceparse
