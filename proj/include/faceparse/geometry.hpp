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

#include <span>
#include <string>
#include <vector>

#include "faceparse/landmarks.hpp"
#include "faceparse/part_schema.hpp"
#include "faceparse/types.hpp"

namespace faceparse {

// p -> scale * R(rotation) * p + translation.
struct SimilarityTransform {
  double scale = 1.0;
  double rotation = 0.0;
  Point translation{};

  Point apply(Point p) const;
  SimilarityTransform inverse() const;
  SimilarityTransform then(const SimilarityTransform& next) const;

  static SimilarityTransform identity() { return {}; }
};

struct Contour {
  std::vector<Point> vertices;
  bool closed = true;
};

// y = a x^2 + b x + c over [x_min, x_max].
struct Parabola {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;

  double operator()(double x) const { return (a * x + b) * x + c; }
};

struct NormalizedPart {
  SimilarityTransform transform;  // image -> part frame
  std::vector<Point> points;
};

// Moves the centroid to the origin and maps the axis direction onto +x with
// half-length 1. If the axis endpoints coincide, the point farthest from
// the first one stands in for the second.
NormalizedPart normalize_part(std::span<const Point> points, Point axis_from,
                              Point axis_to);
// Axis is first -> last point.
NormalizedPart normalize_part(std::span<const Point> points);

// Centripetal Catmull-Rom through `points` with density - 1 extra vertices
// per segment. density == 1 returns the plain polygon. Open chains are
// interpolated without wrapping and closed by a straight edge.
Contour fit_polygon_smooth(std::span<const Point> points, int density,
                           bool closed);
Contour fit_polygon_smooth(std::span<const Point> points, int density,
                           bool closed, Point axis_from, Point axis_to);

// Ordinary least squares in the coordinates given.
Parabola fit_parabola(std::span<const Point> points);

Contour fit_parabola_pair(std::span<const Point> upper,
                          std::span<const Point> lower, int samples = 16);

// Left and right halves run from the bridge top to the bottom centre.
// Pass an empty span for a half that is not visible.
Contour fit_nose(std::span<const Point> left, std::span<const Point> right,
                 int density = 4);

// Schema-driven: selects points, honours visibility and the part axis.
// Throws DegeneratePart when every point of the part is invisible.
Contour fit_part(const PartEntry& entry, const LandmarkSet& landmarks);

bool part_visible(const PartEntry& entry, const LandmarkSet& landmarks);

// O(n^2) check for crossings between non-adjacent edges.
bool is_simple(const Contour& contour);

double polygon_area(std::span<const Point> vertices);

// [[x,y],...] for debugging and the service.
std::string contour_to_json(const Contour& contour);

}  // namespace faceparse
