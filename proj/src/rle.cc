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

#include "faceparse/rle.hpp"

#include <string>

namespace faceparse {

std::vector<RowRuns> rle_encode_rows(const LabelMap& labels) {
  std::vector<RowRuns> rows(static_cast<std::size_t>(labels.height()));
  for (int y = 0; y < labels.height(); ++y) {
    RowRuns& runs = rows[y];
    for (int x = 0; x < labels.width(); ++x) {
      const std::uint8_t v = labels(x, y);
      if (!runs.empty() && runs.back().first == v) {
        ++runs.back().second;
      } else {
        runs.emplace_back(v, 1);
      }
    }
  }
  return rows;
}

LabelMap rle_decode_rows(int width, int height, const std::vector<RowRuns>& rows) {
  if (width < 0 || height < 0 || rows.size() != static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(height) + " rows, got " +
                    std::to_string(rows.size()));
  }
  std::vector<std::uint8_t> labels;
  labels.reserve(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    std::size_t filled = 0;
    for (const auto& [value, length] : rows[y]) {
      filled += length;
      if (filled > static_cast<std::size_t>(width)) break;
      labels.insert(labels.end(), length, value);
    }
    if (filled != static_cast<std::size_t>(width)) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "row " + std::to_string(y) + " runs cover " + std::to_string(filled) +
                      " pixels, width is " + std::to_string(width));
    }
  }
  return LabelMap(width, height, std::move(labels));
}

}  // namespace faceparse
