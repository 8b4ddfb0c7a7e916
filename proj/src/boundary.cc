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

#include "faceparse/boundary.hpp"

#include <cmath>
#include <string>

namespace faceparse {

WeightMap::WeightMap(int width, int height, std::vector<double> weights)
    : width_(width), height_(height), weights_(std::move(weights)) {
  if (width < 0 || height < 0 ||
      weights_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::kDimensionMismatch, "weight map size does not match dimensions");
  }
}

WeightMap WeightMap::ones(int width, int height) {
  return WeightMap(width, height,
                   std::vector<double>(static_cast<std::size_t>(width) * height, 1.0));
}

BoundaryMap extract_boundary(const LabelMap& labels) {
  const int w = labels.width();
  const int h = labels.height();
  BoundaryMap out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::uint8_t v = labels(x, y);
      const bool edge = (x > 0 && labels(x - 1, y) != v) ||
                        (x + 1 < w && labels(x + 1, y) != v) ||
                        (y > 0 && labels(x, y - 1) != v) ||
                        (y + 1 < h && labels(x, y + 1) != v);
      out(x, y) = edge ? 1 : 0;
    }
  }
  return out;
}

WeightMap make_weight_map(const BoundaryMap& boundary, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kNegativeAlpha,
                "alpha must be a finite non-negative number, got " + std::to_string(alpha));
  }
  std::vector<double> weights(boundary.size(), 1.0);
  const double boundary_weight = 1.0 + alpha;
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    if (boundary[i]) weights[i] = boundary_weight;
  }
  return WeightMap(boundary.width(), boundary.height(), std::move(weights));
}

}  // namespace faceparse
