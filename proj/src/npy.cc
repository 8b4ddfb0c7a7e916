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

#include "faceparse/npy.hpp"

#include <cstring>
#include <string>
#include <string_view>

#include "faceparse/image_io.hpp"
#include "faceparse/types.hpp"

namespace faceparse {
namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::kIo, "npy: " + what);
}

// Value of 'key' in the header dict, up to the next top-level comma or brace.
std::string_view dict_value(std::string_view header, std::string_view key) {
  const std::string quoted = "'" + std::string(key) + "'";
  auto pos = header.find(quoted);
  if (pos == std::string_view::npos) bad("header lacks " + quoted);
  pos = header.find(':', pos + quoted.size());
  if (pos == std::string_view::npos) bad("header lacks a value for " + quoted);
  ++pos;
  while (pos < header.size() && header[pos] == ' ') ++pos;
  std::size_t end = pos;
  int depth = 0;
  while (end < header.size()) {
    const char c = header[end];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == ',' || c == '}')) break;
    ++end;
    if (depth == 0 && c == ')') break;
  }
  return header.substr(pos, end - pos);
}

}  // namespace

NpyArray parse_npy(const std::vector<std::uint8_t>& bytes) {
  static constexpr std::uint8_t kMagic[] = {0x93, 'N', 'U', 'M', 'P', 'Y'};
  if (bytes.size() < 10 || std::memcmp(bytes.data(), kMagic, 6) != 0) bad("bad magic");
  const int major = bytes[6];
  std::size_t header_len = 0;
  std::size_t offset = 0;
  if (major == 1) {
    header_len = bytes[8] | (bytes[9] << 8);
    offset = 10;
  } else if (major == 2 || major == 3) {
    if (bytes.size() < 12) bad("truncated header");
    header_len = bytes[8] | (bytes[9] << 8) | (bytes[10] << 16) |
                 (static_cast<std::size_t>(bytes[11]) << 24);
    offset = 12;
  } else {
    bad("unsupported version " + std::to_string(major));
  }
  if (bytes.size() < offset + header_len) bad("truncated header");
  const std::string header(bytes.begin() + static_cast<long>(offset),
                           bytes.begin() + static_cast<long>(offset + header_len));
  offset += header_len;

  const auto descr = dict_value(header, "descr");
  std::size_t item = 0;
  if (descr == "'<f8'") {
    item = 8;
  } else if (descr == "'<f4'") {
    item = 4;
  } else {
    bad("unsupported dtype " + std::string(descr) + " (need <f4 or <f8)");
  }
  if (dict_value(header, "fortran_order") != "False") bad("Fortran order is not supported");

  NpyArray out;
  const auto shape = dict_value(header, "shape");
  std::size_t count = 1;
  std::size_t i = 0;
  while (i < shape.size()) {
    if (std::isdigit(static_cast<unsigned char>(shape[i]))) {
      std::size_t v = 0;
      while (i < shape.size() && std::isdigit(static_cast<unsigned char>(shape[i]))) {
        v = v * 10 + static_cast<std::size_t>(shape[i] - '0');
        ++i;
      }
      out.shape.push_back(v);
      count *= v;
    } else {
      ++i;
    }
  }
  if (bytes.size() < offset + count * item) bad("truncated data");
  out.values.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint8_t* src = bytes.data() + offset + k * item;
    if (item == 8) {
      std::memcpy(&out.values[k], src, 8);
    } else {
      float f;
      std::memcpy(&f, src, 4);
      out.values[k] = f;
    }
  }
  return out;
}

NpyArray read_npy(const std::filesystem::path& path) {
  try {
    return parse_npy(read_file_bytes(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_npy(const NpyArray& array) {
  std::string shape = "(";
  for (std::size_t i = 0; i < array.shape.size(); ++i) {
    shape += std::to_string(array.shape[i]);
    if (array.shape.size() == 1 || i + 1 < array.shape.size()) shape += ", ";
  }
  shape += ")";
  std::string header = "{'descr': '<f8', 'fortran_order': False, 'shape': " + shape + ", }";
  // Pad so the data starts on a 64-byte boundary, newline-terminated.
  while ((10 + header.size() + 1) % 64 != 0) header += ' ';
  header += '\n';
  std::vector<std::uint8_t> out = {0x93, 'N', 'U', 'M', 'P', 'Y', 1, 0};
  out.push_back(static_cast<std::uint8_t>(header.size() & 0xFF));
  out.push_back(static_cast<std::uint8_t>(header.size() >> 8));
  out.insert(out.end(), header.begin(), header.end());
  const std::size_t offset = out.size();
  out.resize(offset + array.values.size() * 8);
  std::memcpy(out.data() + offset, array.values.data(), array.values.size() * 8);
  return out;
}

void write_npy(const std::filesystem::path& path, const NpyArray& array) {
  write_file_atomic(path, encode_npy(array));
}

}  // namespace faceparse
