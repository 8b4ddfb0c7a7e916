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
#include <span>
#include <utility>
#include <vector>

#include "faceparse/types.hpp"

namespace faceparse {

// Row-major H x W grid of bytes.
template <typename Tag>
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, std::uint8_t fill = 0) : width_(width), height_(height) {
    if (width < 0 || height < 0) {
      throw Error(ErrorCode::kInvalidArgument, "negative grid dimensions");
    }
    data_.assign(static_cast<std::size_t>(width) * height, fill);
  }
  Grid(int width, int height, std::vector<std::uint8_t> data)
      : width_(width), height_(height), data_(std::move(data)) {
    if (width < 0 || height < 0 ||
        data_.size() != static_cast<std::size_t>(width) * height) {
      throw Error(ErrorCode::kDimensionMismatch, "grid data size does not match dimensions");
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool same_shape(int w, int h) const { return w == width_ && h == height_; }
  template <typename Other>
  bool same_shape(const Grid<Other>& o) const {
    return same_shape(o.width(), o.height());
  }

  std::uint8_t operator()(int x, int y) const { return data_[index(x, y)]; }
  std::uint8_t& operator()(int x, int y) { return data_[index(x, y)]; }
  std::uint8_t operator[](std::size_t i) const { return data_[i]; }
  std::uint8_t& operator[](std::size_t i) { return data_[i]; }

  std::span<const std::uint8_t> data() const { return data_; }
  std::span<std::uint8_t> data() { return data_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

// Cells are 0 or 1.
using Mask = Grid<struct MaskTag>;
// Cells are boundary indicators, 0 or 1.
using BoundaryMap = Grid<struct BoundaryTag>;

// Cells hold CategoryId values 0..10.
class LabelMap : public Grid<struct LabelTag> {
 public:
  LabelMap() = default;
  LabelMap(int width, int height)
      : Grid(width, height, static_cast<std::uint8_t>(CategoryId::kBackground)) {}
  // Throws InvalidLabel for any value outside 0..10.
  LabelMap(int width, int height, std::vector<std::uint8_t> labels);

  CategoryId at(int x, int y) const {
    return static_cast<CategoryId>((*this)(x, y));
  }
};

}  // namespace faceparse
