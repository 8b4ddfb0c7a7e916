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

#include <vector>

#include "faceparse/label_map.hpp"

namespace faceparse {

class WeightMap {
 public:
  WeightMap(int width, int height, std::vector<double> weights);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  double operator()(int x, int y) const {
    return weights_[static_cast<std::size_t>(y) * width_ + x];
  }
  const std::vector<double>& values() const { return weights_; }

  static WeightMap ones(int width, int height);

 private:
  int width_;
  int height_;
  std::vector<double> weights_;
};

// A pixel is a boundary pixel iff one of its in-bounds 4-neighbours carries
// a different label. Both sides of every transition are flagged.
BoundaryMap extract_boundary(const LabelMap& labels);

// 1 + alpha on boundary pixels, 1 elsewhere. Throws NegativeAlpha.
WeightMap make_weight_map(const BoundaryMap& boundary, double alpha);

}  // namespace faceparse
