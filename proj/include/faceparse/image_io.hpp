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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "faceparse/label_map.hpp"

namespace faceparse {

struct Gray8Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
};

// 8-bit single-channel PNG. Writes are deterministic: fixed compression,
// no timestamps or text chunks.
std::vector<std::uint8_t> encode_png_gray8(const Gray8Image& image);
Gray8Image decode_png_gray8(const std::vector<std::uint8_t>& bytes);

Gray8Image read_gray8(const std::filesystem::path& path);
void write_gray8(const std::filesystem::path& path, const Gray8Image& image);

LabelMap read_label_map(const std::filesystem::path& path);
void write_label_map(const std::filesystem::path& path, const LabelMap& labels);

// Nonzero pixels are set.
Mask read_mask(const std::filesystem::path& path);
// 0/255 for inspection.
void write_boundary_map(const std::filesystem::path& path, const BoundaryMap& boundary);

// Reads width/height from PNG, JPEG or binary PGM headers.
std::pair<int, int> probe_image_size(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
// Writes to a sibling temporary and renames over the target.
void write_file_atomic(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& bytes);
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace faceparse
