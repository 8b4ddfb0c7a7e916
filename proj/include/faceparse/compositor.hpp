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

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "faceparse/geometry.hpp"
#include "faceparse/label_map.hpp"

namespace faceparse {

// Pixel (x, y) is set iff its centre (x + 0.5, y + 0.5) is inside the
// contour under the even-odd rule.
Mask rasterize(const Contour& contour, int width, int height);

using PartMask = std::pair<CategoryId, Mask>;

// Painter's fold: skin, then parts in the given order, then hair. Pixels no
// layer covers stay background. Throws DimensionMismatch.
LabelMap fuse(const Mask& skin, std::span<const PartMask> parts, const Mask& hair,
              int width, int height);

struct FittedPart {
  CategoryId category;
  Contour contour;
  bool simple = true;
};

struct FaceAnnotation {
  LabelMap labels;
  std::vector<FittedPart> parts;  // schema order; skipped parts omitted
};

// Fits every visible part, rasterizes and fuses. Missing skin/hair masks
// mean an empty layer.
FaceAnnotation annotate_face(const LandmarkSet& landmarks, const PartSchema& schema,
                             int width, int height,
                             const std::optional<Mask>& skin = std::nullopt,
                             const std::optional<Mask>& hair = std::nullopt);

}  // namespace faceparse
