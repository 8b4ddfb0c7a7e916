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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "faceparse/compositor.hpp"
#include "faceparse/geometry.hpp"
#include "faceparse/part_schema.hpp"
#include "support/fixture.hpp"
#include "support/oracles.hpp"

namespace faceparse {
namespace {

using testing::Rng;
using testing::uniform;

double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool has_vertex(const Contour& c, Point p, double tol = 0.0) {
  for (const Point& v : c.vertices) {
    if (dist(v, p) <= tol) return true;
  }
  return false;
}

TEST(Similarity, InverseComposesToIdentity) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto t = testing::random_similarity(rng);
    const Point p{uniform(rng, -500, 500), uniform(rng, -500, 500)};
    const Point q = t.inverse().apply(t.apply(p));
    EXPECT_NEAR(q.x, p.x, 1e-9);
    EXPECT_NEAR(q.y, p.y, 1e-9);
    const auto u = testing::random_similarity(rng);
    const Point r = t.then(u).apply(p);
    const Point s = u.apply(t.apply(p));
    EXPECT_NEAR(r.x, s.x, 1e-9);
    EXPECT_NEAR(r.y, s.y, 1e-9);
  }
}

TEST(NormalizePart, CanonicalInputGivesIdentity) {
  const std::vector<Point> pts{{-1, 0}, {0, 0.5}, {0, -0.5}, {1, 0}};
  const auto n = normalize_part(pts);
  EXPECT_NEAR(n.transform.scale, 1.0, 1e-15);
  EXPECT_NEAR(n.transform.rotation, 0.0, 1e-15);
  EXPECT_NEAR(n.transform.translation.x, 0.0, 1e-15);
  EXPECT_NEAR(n.transform.translation.y, 0.0, 1e-15);
}

TEST(NormalizePart, AxisCentroidAndScale) {
  const std::vector<Point> pts{{10, 10}, {12, 14}, {16, 12}, {10, 20}};
  const auto n = normalize_part(pts);
  Point centroid{};
  for (const Point& p : n.points) centroid = centroid + p;
  EXPECT_NEAR(centroid.x, 0.0, 1e-12);
  EXPECT_NEAR(centroid.y, 0.0, 1e-12);
  // first -> last lies along +x with length 2
  const Point axis = n.points.back() - n.points.front();
  EXPECT_NEAR(axis.y, 0.0, 1e-12);
  EXPECT_NEAR(axis.x, 2.0, 1e-12);
}

TEST(NormalizePart, RoundTripAndRotationInvariance) {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 7; ++i) pts.push_back({uniform(rng, 0, 300), uniform(rng, 0, 300)});
    const auto n = normalize_part(pts);
    const auto back = n.transform.inverse();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      EXPECT_LT(dist(back.apply(n.points[i]), pts[i]), 1e-6);
    }
    SimilarityTransform rot;
    rot.rotation = std::numbers::pi / 2;
    std::vector<Point> rotated;
    for (const Point& p : pts) rotated.push_back(rot.apply(p));
    const auto m = normalize_part(rotated);
    for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_LT(dist(m.points[i], n.points[i]), 1e-6);
  }
}

TEST(NormalizePart, CoincidentPointsAreDegenerate) {
  const std::vector<Point> pts(4, Point{3, 3});
  EXPECT_THROW(normalize_part(pts), Error);
}

TEST(PolygonSmooth, DensityOneIsThePlainPolygon) {
  const std::vector<Point> square{{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  const auto c = fit_polygon_smooth(square, 1, true);
  EXPECT_EQ(c.vertices, square);
  EXPECT_TRUE(c.closed);
}

TEST(PolygonSmooth, PassesThroughEveryInputPoint) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto poly = testing::random_simple_polygon(rng, 100, 100, 10);
    if (poly.size() < 3) continue;
    const int density = testing::uniform_int(rng, 2, 8);
    const auto c = fit_polygon_smooth(poly, density, true);
    EXPECT_EQ(c.vertices.size(), poly.size() * static_cast<std::size_t>(density));
    for (const Point& p : poly) EXPECT_TRUE(has_vertex(c, p)) << trial;
  }
}

TEST(PolygonSmooth, CatmullRomHugsACircleBetterThanChords) {
  std::vector<Point> circle;
  for (int k = 0; k < 8; ++k) {
    const double a = 2 * std::numbers::pi * k / 8;
    circle.push_back({100 * std::cos(a), 100 * std::sin(a)});
  }
  const auto max_dev = [](const std::vector<Point>& v) {
    double worst = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      // sample each edge densely against the exact circle
      const Point a = v[i];
      const Point b = v[(i + 1) % v.size()];
      for (int s = 0; s <= 20; ++s) {
        const Point p = a + (s / 20.0) * (b - a);
        worst = std::max(worst, std::fabs(std::hypot(p.x, p.y) - 100.0));
      }
    }
    return worst;
  };
  const auto plain = fit_polygon_smooth(circle, 1, true);
  const auto smooth = fit_polygon_smooth(circle, 8, true);
  EXPECT_LT(max_dev(smooth.vertices), max_dev(plain.vertices));
  EXPECT_LT(max_dev(smooth.vertices), 0.15 * max_dev(plain.vertices));
}

TEST(PolygonSmooth, TooFewPointsIsDegenerate) {
  const std::vector<Point> two{{0, 0}, {1, 1}};
  EXPECT_THROW(fit_polygon_smooth(two, 4, true), Error);
  const std::vector<Point> repeated{{0, 0}, {1, 1}, {1, 1}, {0, 0}};
  EXPECT_THROW(fit_polygon_smooth(repeated, 4, true), Error);
}

TEST(Parabola, ExactThroughThreePoints) {
  const std::vector<Point> pts{{-1, 1}, {0, 0}, {1, 1}};
  const auto p = fit_parabola(pts);
  EXPECT_NEAR(p.a, 1.0, 1e-9);
  EXPECT_NEAR(p.b, 0.0, 1e-9);
  EXPECT_NEAR(p.c, 0.0, 1e-9);
  EXPECT_EQ(p.x_min, -1.0);
  EXPECT_EQ(p.x_max, 1.0);
}

TEST(Parabola, RandomThreePointInterpolation) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = uniform(rng, -3, 3), b = uniform(rng, -3, 3), c = uniform(rng, -3, 3);
    std::vector<Point> pts;
    for (double x : {uniform(rng, -1.5, -0.5), uniform(rng, -0.3, 0.3), uniform(rng, 0.5, 1.5)}) {
      pts.push_back({x, (a * x + b) * x + c});
    }
    const auto p = fit_parabola(pts);
    EXPECT_NEAR(p.a, a, 1e-9);
    EXPECT_NEAR(p.b, b, 1e-9);
    EXPECT_NEAR(p.c, c, 1e-9);
  }
}

TEST(Parabola, ResidualNoWorseThanBestLine) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({uniform(rng, -1, 1), uniform(rng, -1, 1)});
    const auto p = fit_parabola(pts);
    // least-squares line via closed form
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const Point& q : pts) {
      sx += q.x; sy += q.y; sxx += q.x * q.x; sxy += q.x * q.y;
    }
    const double n = static_cast<double>(pts.size());
    const double m = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double k = (sy - m * sx) / n;
    double rp = 0, rl = 0;
    for (const Point& q : pts) {
      rp += std::pow(p(q.x) - q.y, 2);
      rl += std::pow(m * q.x + k - q.y, 2);
    }
    EXPECT_LE(rp, rl + 1e-12);
  }
}

TEST(Parabola, RepeatedAbscissaIsIllConditioned) {
  const std::vector<Point> pts{{0, 0}, {1, 1}, {1, 2}, {0, 3}};
  try {
    fit_parabola(pts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIllConditionedFit);
  }
}

TEST(ParabolaPair, LensIsSymmetricWithExpectedArea) {
  const double s = 80.0;
  const Point c{100, 100};
  const auto at = [&](double x, double y) { return Point{c.x + s * x, c.y + s * y}; };
  const std::vector<Point> upper{at(-1, 0), at(0, -1), at(1, 0)};
  const std::vector<Point> lower{at(-1, 0), at(0, 1), at(1, 0)};
  const auto contour = fit_parabola_pair(upper, lower, 16);
  EXPECT_EQ(contour.vertices.size(), 30u);
  for (const Point& v : contour.vertices) {
    EXPECT_TRUE(has_vertex(contour, {v.x, 2 * c.y - v.y}, 1e-9));
  }
  const Mask m = rasterize(contour, 200, 200);
  double area = 0;
  for (std::size_t i = 0; i < m.size(); ++i) area += m[i];
  // Area between y = x^2 - 1 and 1 - x^2 over [-1, 1] is 8/3.
  const double exact = 8.0 / 3.0 * s * s;
  EXPECT_LT(std::fabs(area - exact) / exact, 0.02);
}

TEST(ParabolaPair, CollinearArcsCollapseToEmptyMask) {
  const std::vector<Point> line{{10, 20}, {20, 20}, {30, 20}};
  const auto contour = fit_parabola_pair(line, line, 16);
  const Mask m = rasterize(contour, 40, 40);
  for (std::size_t i = 0; i < m.size(); ++i) ASSERT_EQ(m[i], 0);
}

TEST(ParabolaPair, CornersAreOnTheContour) {
  const std::vector<Point> upper{{0, 10}, {5, 7}, {10, 6}, {15, 7}, {20, 10}};
  const std::vector<Point> lower{{0, 10}, {5, 12}, {10, 13}, {15, 12}, {20, 10}};
  const auto contour = fit_parabola_pair(upper, lower, 16);
  EXPECT_EQ(contour.vertices.front(), (Point{0, 10}));
  EXPECT_TRUE(has_vertex(contour, {20, 10}));
  EXPECT_TRUE(is_simple(contour));
}

std::vector<Point> nose_half(double sign) {
  return {{0, 0}, {sign * 3, 10}, {sign * 6, 16}, {sign * 5, 20}, {sign * 2, 21}, {0, 22}};
}

TEST(Nose, MirrorHalvesGiveSymmetricContour) {
  const auto contour = fit_nose(nose_half(-1), nose_half(1), 4);
  for (const Point& v : contour.vertices) {
    EXPECT_TRUE(has_vertex(contour, {-v.x, v.y}, 1e-6)) << v.x << "," << v.y;
  }
  EXPECT_TRUE(is_simple(contour));
}

TEST(Nose, ProfileFallbackUsesVisibleHalfOnly) {
  const auto left = nose_half(-1);
  const auto contour = fit_nose(left, {}, 4);
  const auto expected = fit_polygon_smooth(left, 4, true);
  EXPECT_EQ(contour.vertices, expected.vertices);
  EXPECT_THROW(fit_nose({}, {}, 4), Error);
}

TEST(Nose, RandomNoseShapesContainEveryInputPoint) {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Point> left{{0, 0}}, right{{0, 0}};
    const int n = testing::uniform_int(rng, 2, 6);
    for (int i = 1; i <= n; ++i) {
      const double y = 4.0 * i + uniform(rng, -1, 1);
      left.push_back({-uniform(rng, 1, 8), y});
      right.push_back({uniform(rng, 1, 8), y + uniform(rng, -1, 1)});
    }
    const Point tip{uniform(rng, -1, 1), 4.0 * n + 6};
    left.push_back(tip);
    right.push_back(tip);
    const auto contour = fit_nose(left, right, 3);
    for (const Point& p : left) EXPECT_TRUE(has_vertex(contour, p));
    for (const Point& p : right) EXPECT_TRUE(has_vertex(contour, p));
  }
}

TEST(FitPart, EquivarianceUnderSimilarity) {
  Rng rng(8);
  const auto base = testing::fixture_landmarks("f000");
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = testing::random_similarity(rng);
    LandmarkSet::Points moved{};
    for (int i = 0; i < kNumLandmarks; ++i) moved[i] = t.apply(base.point(i));
    const LandmarkSet other(moved);
    for (const auto& entry : default_part_schema().entries()) {
      const auto a = fit_part(entry, base);
      const auto b = fit_part(entry, other);
      ASSERT_EQ(a.vertices.size(), b.vertices.size());
      for (std::size_t i = 0; i < a.vertices.size(); ++i) {
        ASSERT_LT(dist(t.apply(a.vertices[i]), b.vertices[i]), 1e-5)
            << category_name(entry.category);
      }
    }
  }
}

TEST(FitPart, FixtureContoursAreSimple) {
  for (const char* id : {"f000", "f001", "f002", "f003", "f004", "f005"}) {
    const auto lm = testing::fixture_landmarks(id);
    for (const auto& entry : default_part_schema().entries()) {
      if (!part_visible(entry, lm)) continue;
      EXPECT_TRUE(is_simple(fit_part(entry, lm))) << id << " " << category_name(entry.category);
    }
  }
}

TEST(FitPart, InvisiblePartIsSkippedByAnnotation) {
  const auto lm = testing::fixture_landmarks("f005");
  const auto* eye = default_part_schema().find(CategoryId::kRightEye);
  EXPECT_FALSE(part_visible(*eye, lm));
  EXPECT_THROW(fit_part(*eye, lm), Error);
  const auto ann = annotate_face(lm, default_part_schema(), 128, 128);
  EXPECT_EQ(ann.parts.size(), 7u);
  for (std::size_t i = 0; i < ann.labels.size(); ++i) {
    EXPECT_NE(ann.labels[i], static_cast<std::uint8_t>(CategoryId::kRightEye));
  }
}

TEST(FitPart, NoseProfileFromVisibility) {
  auto lm = testing::fixture_landmarks("f000");
  const auto* nose = default_part_schema().find(CategoryId::kNose);
  LandmarkSet::Visibility vis{};
  vis.fill(true);
  for (int i : nose->second_arc) {
    if (std::find(nose->first_arc.begin(), nose->first_arc.end(), i) == nose->first_arc.end()) {
      vis[i] = false;
    }
  }
  const LandmarkSet profile(lm.points(), vis);
  std::vector<Point> left;
  for (int i : nose->first_arc) left.push_back(lm.point(i));
  const auto got = fit_part(*nose, profile);
  const auto want = fit_polygon_smooth(left, nose->density, true, lm.point(nose->axis.first),
                                       lm.point(nose->axis.second));
  EXPECT_EQ(got.vertices, want.vertices);
}

TEST(Contour, JsonListsVertices) {
  Contour c;
  c.vertices = {{0, 0}, {1.5, 0}, {0, 2}};
  EXPECT_EQ(contour_to_json(c), "[[0,0],[1.5,0],[0,2]]");
}

}  // namespace
}  // namespace faceparse
