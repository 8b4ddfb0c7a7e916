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
#include <utility>
#include <vector>

#include "faceparse/label_map.hpp"

namespace faceparse {

// (value, run length) pairs covering one row left to right.
using RowRuns = std::vector<std::pair<std::uint8_t, std::uint32_t>>;

std::vector<RowRuns> rle_encode_rows(const LabelMap& labels);
// Throws DimensionMismatch when a row's runs do not sum to width.
LabelMap rle_decode_rows(int width, int height, const std::vector<RowRuns>& rows);

}  // namespace faceparse
