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

#include "faceparse/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace faceparse {
namespace {

double norm(Point p) { return std::hypot(p.x, p.y); }

[[noreturn]] void degenerate(const std::string& what) {
  throw Error(ErrorCode::kDegeneratePart, what);
}

// Drops consecutive repeats; for closed rings also a last == first repeat.
std::vector<Point> dedupe(std::span<const Point> points, bool closed) {
  std::vector<Point> out;
  out.reserve(points.size());
  for (const Point& p : points) {
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  }
  if (closed) {
    while (out.size() > 1 && out.back() == out.front()) out.pop_back();
  }
  return out;
}

// Point at parameter t on the centripetal Catmull-Rom segment p1 -> p2
// (Barry-Goldman pyramid). Knot intervals are sqrt of chord lengths.
Point catmull_rom(Point p0, Point p1, Point p2, Point p3, double u) {
  const double t0 = 0.0;
  const double t1 = t0 + std::sqrt(norm(p1 - p0));
  const double t2 = t1 + std::sqrt(norm(p2 - p1));
  const double t3 = t2 + std::sqrt(norm(p3 - p2));
  const double t = t1 + u * (t2 - t1);
  const auto lerp = [t](Point a, Point b, double ta, double tb) {
    return ((tb - t) / (tb - ta)) * a + ((t - ta) / (tb - ta)) * b;
  };
  const Point a1 = lerp(p0, p1, t0, t1);
  const Point a2 = lerp(p1, p2, t1, t2);
  const Point a3 = lerp(p2, p3, t2, t3);
  const Point b1 = lerp(a1, a2, t0, t2);
  const Point b2 = lerp(a2, a3, t1, t3);
  return lerp(b1, b2, t1, t2);
}

// Vertices of the interpolated chain in the frame of `frame_points`;
// knots are returned as the caller's original image points.
std::vector<Point> interpolate_chain(std::span<const Point> image_points,
                                     std::span<const Point> frame_points, int density,
                                     bool closed, const SimilarityTransform& to_image) {
  const std::size_t n = frame_points.size();
  std::vector<Point> out;
  out.reserve(n * static_cast<std::size_t>(density));
  const std::size_t segments = closed ? n : n - 1;
  const auto at = [&](long i) -> Point {
    if (closed) {
      const long m = static_cast<long>(n);
      return frame_points[static_cast<std::size_t>(((i % m) + m) % m)];
    }
    if (i < 0) return 2.0 * frame_points[0] - frame_points[1];
    if (i >= static_cast<long>(n)) return 2.0 * frame_points[n - 1] - frame_points[n - 2];
    return frame_points[static_cast<std::size_t>(i)];
  };
  for (std::size_t s = 0; s < segments; ++s) {
    const long i = static_cast<long>(s);
    out.push_back(image_points[s]);
    for (int k = 1; k < density; ++k) {
      const double u = static_cast<double>(k) / density;
      out.push_back(to_image.apply(catmull_rom(at(i - 1), at(i), at(i + 1), at(i + 2), u)));
    }
  }
  if (!closed) out.push_back(image_points[n - 1]);
  return out;
}

Contour make_contour(std::vector<Point> vertices) {
  Contour c;
  c.vertices = dedupe(vertices, true);
  c.closed = true;
  if (c.vertices.size() < 3) degenerate("contour has fewer than 3 distinct vertices");
  return c;
}

Contour fit_parabola_pair_impl(std::span<const Point> upper, std::span<const Point> lower,
                               int samples, Point axis_from, Point axis_to) {
  if (upper.size() < 3 || lower.size() < 3) {
    degenerate("parabola arcs need at least 3 points each");
  }
  if (samples < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 samples per arc");
  const Point corner_a = 0.5 * (upper.front() + lower.front());
  const Point corner_b = 0.5 * (upper.back() + lower.back());
  if (corner_a == corner_b) degenerate("parabola corners coincide");

  std::vector<Point> all(upper.begin(), upper.end());
  all.insert(all.end(), lower.begin(), lower.end());
  const NormalizedPart part = normalize_part(all, axis_from, axis_to);
  const std::span<const Point> upper_n(part.points.data(), upper.size());
  const std::span<const Point> lower_n(part.points.data() + upper.size(), lower.size());
  const Parabola top = fit_parabola(upper_n);
  const Parabola bottom = fit_parabola(lower_n);

  const SimilarityTransform back = part.transform.inverse();
  const double xa = part.transform.apply(corner_a).x;
  const double xb = part.transform.apply(corner_b).x;
  const auto sample_x = [&](int k) { return xa + (xb - xa) * k / (samples - 1); };

  std::vector<Point> vertices;
  vertices.reserve(2 * static_cast<std::size_t>(samples));
  vertices.push_back(corner_a);
  for (int k = 1; k < samples - 1; ++k) {
    const double x = sample_x(k);
    vertices.push_back(back.apply({x, top(x)}));
  }
  vertices.push_back(corner_b);
  for (int k = samples - 2; k >= 1; --k) {
    const double x = sample_x(k);
    vertices.push_back(back.apply({x, bottom(x)}));
  }
  return make_contour(std::move(vertices));
}

Contour fit_nose_impl(std::span<const Point> left, std::span<const Point> right, int density,
                      Point axis_from, Point axis_to) {
  if (left.empty() && right.empty()) degenerate("both nose halves are missing");
  if (right.empty()) return fit_polygon_smooth(left, density, true, axis_from, axis_to);
  if (left.empty()) return fit_polygon_smooth(right, density, true, axis_from, axis_to);

  const auto left_pts = dedupe(left, false);
  const auto right_pts = dedupe(right, false);
  if (left_pts.size() < 2 || right_pts.size() < 2) {
    degenerate("each nose half needs two distinct points");
  }
  if (density < 1) throw Error(ErrorCode::kInvalidArgument, "density must be >= 1");

  std::vector<Point> all(left_pts);
  all.insert(all.end(), right_pts.begin(), right_pts.end());
  const NormalizedPart part = normalize_part(all, axis_from, axis_to);
  const std::span<const Point> left_n(part.points.data(), left_pts.size());
  const std::span<const Point> right_n(part.points.data() + left_pts.size(),
                                       right_pts.size());
  const SimilarityTransform back = part.transform.inverse();
  const auto left_chain = interpolate_chain(left_pts, left_n, density, false, back);
  auto right_chain = interpolate_chain(right_pts, right_n, density, false, back);
  std::reverse(right_chain.begin(), right_chain.end());

  // Bridge top and bottom centre are usually shared by both halves.
  std::vector<Point> vertices(left_chain);
  std::size_t skip_front = right_chain.front() == left_chain.back() ? 1 : 0;
  std::size_t skip_back = right_chain.back() == left_chain.front() ? 1 : 0;
  if (skip_front + skip_back >= right_chain.size()) skip_back = 0;
  vertices.insert(vertices.end(), right_chain.begin() + static_cast<long>(skip_front),
                  right_chain.end() - static_cast<long>(skip_back));
  return make_contour(std::move(vertices));
}

bool segments_intersect(Point a, Point b, Point c, Point d) {
  const auto cross = [](Point o, Point p, Point q) {
    return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x);
  };
  const auto on_segment = [](Point p, Point q, Point r) {
    return std::min(p.x, r.x) <= q.x && q.x <= std::max(p.x, r.x) &&
           std::min(p.y, r.y) <= q.y && q.y <= std::max(p.y, r.y);
  };
  const double d1 = cross(c, d, a);
  const double d2 = cross(c, d, b);
  const double d3 = cross(a, b, c);
  const double d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  if (d1 == 0 && on_segment(c, a, d)) return true;
  if (d2 == 0 && on_segment(c, b, d)) return true;
  if (d3 == 0 && on_segment(a, c, b)) return true;
  if (d4 == 0 && on_segment(a, d, b)) return true;
  return false;
}

}  // namespace

Point SimilarityTransform::apply(Point p) const {
  const double c = std::cos(rotation);
  const double s = std::sin(rotation);
  return {scale * (c * p.x - s * p.y) + translation.x,
          scale * (s * p.x + c * p.y) + translation.y};
}

SimilarityTransform SimilarityTransform::inverse() const {
  SimilarityTransform inv;
  inv.scale = 1.0 / scale;
  inv.rotation = -rotation;
  const Point t = inv.apply(translation);  // translation is still zero here
  inv.translation = {-t.x, -t.y};
  return inv;
}

SimilarityTransform SimilarityTransform::then(const SimilarityTransform& next) const {
  SimilarityTransform out;
  out.scale = scale * next.scale;
  out.rotation = rotation + next.rotation;
  out.translation = next.apply(translation);
  return out;
}

NormalizedPart normalize_part(std::span<const Point> points, Point axis_from,
                              Point axis_to) {
  if (points.empty()) degenerate("part has no points");
  const bool coincident = std::all_of(points.begin(), points.end(),
                                      [&](const Point& p) { return p == points.front(); });
  if (coincident) degenerate("all points of the part coincide");

  Point centroid{};
  for (const Point& p : points) centroid = centroid + p;
  centroid = (1.0 / static_cast<double>(points.size())) * centroid;

  Point axis = axis_to - axis_from;
  if (norm(axis) == 0.0) {
    const auto far = std::max_element(points.begin(), points.end(),
                                      [&](const Point& a, const Point& b) {
                                        return norm(a - axis_from) < norm(b - axis_from);
                                      });
    axis = *far - axis_from;
    if (norm(axis) == 0.0) degenerate("part axis has zero length");
  }

  NormalizedPart out;
  out.transform.scale = 2.0 / norm(axis);
  out.transform.rotation = -std::atan2(axis.y, axis.x);
  const Point moved = out.transform.apply(centroid);
  out.transform.translation = {-moved.x, -moved.y};
  out.points.reserve(points.size());
  for (const Point& p : points) out.points.push_back(out.transform.apply(p));
  return out;
}

NormalizedPart normalize_part(std::span<const Point> points) {
  if (points.empty()) degenerate("part has no points");
  return normalize_part(points, points.front(), points.back());
}

Contour fit_polygon_smooth(std::span<const Point> points, int density, bool closed,
                           Point axis_from, Point axis_to) {
  if (density < 1) throw Error(ErrorCode::kInvalidArgument, "density must be >= 1");
  const auto ring = dedupe(points, true);
  if (ring.size() < 3) degenerate("polygon needs at least 3 distinct points");
  if (density == 1) return make_contour(ring);

  const NormalizedPart part = normalize_part(ring, axis_from, axis_to);
  return make_contour(
      interpolate_chain(ring, part.points, density, closed, part.transform.inverse()));
}

Contour fit_polygon_smooth(std::span<const Point> points, int density, bool closed) {
  if (points.empty()) degenerate("polygon has no points");
  return fit_polygon_smooth(points, density, closed, points.front(), points.back());
}

Parabola fit_parabola(std::span<const Point> points) {
  if (points.size() < 3) degenerate("parabola fit needs at least 3 points");
  Eigen::MatrixXd design(points.size(), 3);
  Eigen::VectorXd rhs(points.size());
  Parabola out;
  out.x_min = std::numeric_limits<double>::infinity();
  out.x_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = points[i].x;
    design(static_cast<Eigen::Index>(i), 0) = x * x;
    design(static_cast<Eigen::Index>(i), 1) = x;
    design(static_cast<Eigen::Index>(i), 2) = 1.0;
    rhs(static_cast<Eigen::Index>(i)) = points[i].y;
    out.x_min = std::min(out.x_min, x);
    out.x_max = std::max(out.x_max, x);
  }
  if (!(out.x_min < out.x_max)) degenerate("parabola arc has no extent along x");

  const Eigen::Matrix3d normal = design.transpose() * design;
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(normal);
  const auto& sv = svd.singularValues();
  if (!std::isfinite(sv(0)) || sv(2) <= sv(0) * 1e-12) {
    throw Error(ErrorCode::kIllConditionedFit,
                "parabola normal equations are ill-conditioned (need 3 distinct x values)");
  }
  const Eigen::Vector3d coeffs = design.colPivHouseholderQr().solve(rhs);
  out.a = coeffs(0);
  out.b = coeffs(1);
  out.c = coeffs(2);
  if (!std::isfinite(out.a) || !std::isfinite(out.b) || !std::isfinite(out.c)) {
    throw Error(ErrorCode::kIllConditionedFit, "parabola coefficients are not finite");
  }
  return out;
}

Contour fit_parabola_pair(std::span<const Point> upper, std::span<const Point> lower,
                          int samples) {
  if (upper.size() < 3 || lower.size() < 3) {
    degenerate("parabola arcs need at least 3 points each");
  }
  return fit_parabola_pair_impl(upper, lower, samples,
                                0.5 * (upper.front() + lower.front()),
                                0.5 * (upper.back() + lower.back()));
}

Contour fit_nose(std::span<const Point> left, std::span<const Point> right, int density) {
  const auto axis_source = left.empty() ? right : left;
  if (axis_source.empty()) degenerate("both nose halves are missing");
  return fit_nose_impl(left, right, density, axis_source.front(), axis_source.back());
}

bool part_visible(const PartEntry& entry, const LandmarkSet& landmarks) {
  return std::any_of(entry.indices.begin(), entry.indices.end(),
                     [&](int i) { return landmarks.visible(i); });
}

Contour fit_part(const PartEntry& entry, const LandmarkSet& landmarks) {
  const auto gather = [&](const std::vector<int>& indices) {
    std::vector<Point> pts;
    pts.reserve(indices.size());
    for (int i : indices) pts.push_back(landmarks.point(i));
    return pts;
  };
  const std::string name(category_name(entry.category));
  if (!part_visible(entry, landmarks)) degenerate(name + " is not visible");
  const Point axis_from = landmarks.point(entry.axis.first);
  const Point axis_to = landmarks.point(entry.axis.second);

  switch (entry.strategy) {
    case FitStrategy::kPolygon:
      return fit_polygon_smooth(gather(entry.indices), entry.density, entry.closed,
                                axis_from, axis_to);
    case FitStrategy::kParabolaPair:
      return fit_parabola_pair_impl(gather(entry.first_arc), gather(entry.second_arc),
                                    entry.samples, axis_from, axis_to);
    case FitStrategy::kPiecewiseNose: {
      // A half counts as hidden when all of its own (unshared) points are.
      const auto hidden = [&](const std::vector<int>& half, const std::vector<int>& other) {
        bool any_own = false;
        for (int i : half) {
          if (std::find(other.begin(), other.end(), i) != other.end()) continue;
          any_own = true;
          if (landmarks.visible(i)) return false;
        }
        return any_own;
      };
      const bool left_hidden = hidden(entry.first_arc, entry.second_arc);
      const bool right_hidden = hidden(entry.second_arc, entry.first_arc);
      if (left_hidden && right_hidden) degenerate(name + ": both halves hidden");
      const auto left = left_hidden ? std::vector<Point>{} : gather(entry.first_arc);
      const auto right = right_hidden ? std::vector<Point>{} : gather(entry.second_arc);
      return fit_nose_impl(left, right, entry.density, axis_from, axis_to);
    }
  }
  degenerate(name + ": unknown strategy");
}

bool is_simple(const Contour& contour) {
  const auto& v = contour.vertices;
  const std::size_t n = v.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) return false;
    }
  }
  return polygon_area(v) > 0.0;
}

double polygon_area(std::span<const Point> vertices) {
  double twice = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = vertices[i];
    const Point& b = vertices[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return std::fabs(twice) * 0.5;
}

std::string contour_to_json(const Contour& contour) {
  std::string out = "[";
  for (std::size_t i = 0; i < contour.vertices.size(); ++i) {
    if (i) out += ',';
    out += '[' + format_coordinate(contour.vertices[i].x) + ',' +
           format_coordinate(contour.vertices[i].y) + ']';
  }
  out += ']';
  return out;
}

}  // namespace faceparse
