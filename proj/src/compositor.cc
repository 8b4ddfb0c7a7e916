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

#include "faceparse/compositor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "log.hpp"

namespace faceparse {

LabelMap::LabelMap(int width, int height, std::vector<std::uint8_t> labels)
    : Grid(width, height, std::move(labels)) {
  for (std::uint8_t v : data()) {
    if (!is_valid_label(v)) {
      throw Error(ErrorCode::kInvalidLabel,
                  "label value " + std::to_string(v) + " outside 0.." +
                      std::to_string(kNumCategories - 1));
    }
  }
}

Mask rasterize(const Contour& contour, int width, int height) {
  Mask mask(width, height);
  const auto& v = contour.vertices;
  const std::size_t n = v.size();
  if (n < 3 || width == 0 || height == 0) return mask;

  double y_lo = v[0].y;
  double y_hi = v[0].y;
  for (const Point& p : v) {
    y_lo = std::min(y_lo, p.y);
    y_hi = std::max(y_hi, p.y);
  }
  const int row_begin = std::max(0, static_cast<int>(std::floor(y_lo - 0.5)));
  const int row_end = std::min(height, static_cast<int>(std::ceil(y_hi + 0.5)) + 1);

  std::vector<double> crossings;
  for (int row = row_begin; row < row_end; ++row) {
    const double py = row + 0.5;
    crossings.clear();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const Point& a = v[i];
      const Point& b = v[j];
      // Half-open in y so vertices on the scanline count once.
      if ((a.y > py) != (b.y > py)) {
        crossings.push_back((b.x - a.x) * (py - a.y) / (b.y - a.y) + a.x);
      }
    }
    std::sort(crossings.begin(), crossings.end());
    // Centre px is inside iff an odd number of crossings lie strictly right
    // of it, i.e. crossings[2k] <= px < crossings[2k + 1].
    for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
      const double lo = crossings[k];
      const double hi = crossings[k + 1];
      if (!(lo < hi)) continue;
      int first = static_cast<int>(std::max(0.0, std::ceil(lo - 0.5)));
      while (first > 0 && (first - 1) + 0.5 >= lo) --first;
      while (first < width && first + 0.5 < lo) ++first;
      for (int x = first; x < width && x + 0.5 < hi; ++x) mask(x, row) = 1;
    }
  }
  return mask;
}

LabelMap fuse(const Mask& skin, std::span<const PartMask> parts, const Mask& hair,
              int width, int height) {
  const auto check = [&](const Mask& m, const std::string& what) {
    if (!m.same_shape(width, height)) {
      throw Error(ErrorCode::kDimensionMismatch,
                  what + " mask is " + std::to_string(m.width()) + "x" +
                      std::to_string(m.height()) + ", expected " + std::to_string(width) +
                      "x" + std::to_string(height));
    }
  };
  check(skin, "skin");
  check(hair, "hair");
  for (const auto& [category, mask] : parts) check(mask, std::string(category_name(category)));

  LabelMap labels(width, height);
  const auto paint = [&](const Mask& m, CategoryId id) {
    const auto value = static_cast<std::uint8_t>(id);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (m[i]) labels[i] = value;
    }
  };
  paint(skin, CategoryId::kSkin);
  for (const auto& [category, mask] : parts) paint(mask, category);
  paint(hair, CategoryId::kHair);
  return labels;
}

FaceAnnotation annotate_face(const LandmarkSet& landmarks, const PartSchema& schema,
                             int width, int height, const std::optional<Mask>& skin,
                             const std::optional<Mask>& hair) {
  FaceAnnotation out;
  std::vector<PartMask> masks;
  for (const PartEntry& entry : schema.entries()) {
    if (!part_visible(entry, landmarks)) continue;
    FittedPart part{entry.category, fit_part(entry, landmarks), true};
    part.simple = is_simple(part.contour);
    if (!part.simple) {
      log_warning(std::string(category_name(entry.category)) +
                  " contour is self-intersecting");
    }
    masks.emplace_back(entry.category, rasterize(part.contour, width, height));
    out.parts.push_back(std::move(part));
  }
  const Mask empty(width, height);
  out.labels = fuse(skin ? *skin : empty, masks, hair ? *hair : empty, width, height);
  return out;
}

}  // namespace faceparse
