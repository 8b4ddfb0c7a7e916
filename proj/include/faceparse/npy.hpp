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
#include <vector>

namespace faceparse {

// Minimal .npy support: little-endian float32/float64, C order.
struct NpyArray {
  std::vector<std::size_t> shape;
  std::vector<double> values;
};

NpyArray parse_npy(const std::vector<std::uint8_t>& bytes);
NpyArray read_npy(const std::filesystem::path& path);
// Always writes float64 ('<f8').
std::vector<std::uint8_t> encode_npy(const NpyArray& array);
void write_npy(const std::filesystem::path& path, const NpyArray& array);

}  // namespace faceparse
