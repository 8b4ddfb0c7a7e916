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

#include <set>
#include <vector>

#include "faceparse/compositor.hpp"
#include "support/fixture.hpp"
#include "support/oracles.hpp"

namespace faceparse {
namespace {

using testing::Rng;

std::vector<std::uint8_t> bits(const Mask& m) { return {m.data().begin(), m.data().end()}; }

Contour closed(std::vector<Point> v) {
  Contour c;
  c.vertices = std::move(v);
  return c;
}

TEST(Rasterize, AxisAlignedSquare) {
  const auto m = rasterize(closed({{0, 0}, {4, 0}, {4, 4}, {0, 4}}), 8, 8);
  int count = 0;
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      EXPECT_EQ(m(x, y) == 1, x < 4 && y < 4);
      count += m(x, y);
    }
  }
  EXPECT_EQ(count, 16);
}

TEST(Rasterize, OutsideAndDegenerateContoursAreEmpty) {
  const auto outside = rasterize(closed({{-10, -10}, {-2, -10}, {-2, -2}}), 8, 8);
  const auto far = rasterize(closed({{20, 20}, {30, 20}, {30, 30}}), 8, 8);
  const auto line = rasterize(closed({{0, 0}, {4, 4}, {8, 8}}), 8, 8);
  for (const Mask* m : {&outside, &far, &line}) {
    for (std::size_t i = 0; i < m->size(); ++i) EXPECT_EQ((*m)[i], 0);
  }
}

TEST(Rasterize, ClipsToImageBounds) {
  const auto m = rasterize(closed({{-5, -5}, {50, -5}, {50, 50}, {-5, 50}}), 6, 4);
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_EQ(m[i], 1);
}

TEST(Rasterize, MatchesEvenOddOracleOnRandomPolygons) {
  Rng rng(100);
  for (int trial = 0; trial < 600; ++trial) {
    const auto poly = testing::random_simple_polygon(rng, 32, 32);
    if (poly.size() < 3) continue;
    ASSERT_EQ(bits(rasterize(closed(poly), 32, 32)), testing::raster_oracle(poly, 32, 32))
        << "trial " << trial;
  }
}

TEST(Rasterize, MatchesOracleOnSelfIntersectingPolygons) {
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point> poly;
    const int n = testing::uniform_int(rng, 3, 10);
    for (int i = 0; i < n; ++i) {
      poly.push_back({testing::uniform(rng, -4, 36), testing::uniform(rng, -4, 36)});
    }
    ASSERT_EQ(bits(rasterize(closed(poly), 32, 32)), testing::raster_oracle(poly, 32, 32));
  }
}

TEST(Rasterize, AreaWithinCenterSamplingBound) {
  Rng rng(102);
  for (int trial = 0; trial < 100; ++trial) {
    const auto poly = testing::random_simple_polygon(rng, 64, 64);
    if (poly.size() < 3) continue;
    const auto m = rasterize(closed(poly), 64, 64);
    double count = 0;
    for (std::size_t i = 0; i < m.size(); ++i) count += m[i];
    double perimeter = 0;
    bool inside = true;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Point a = poly[i], b = poly[(i + 1) % poly.size()];
      perimeter += std::hypot(b.x - a.x, b.y - a.y);
      inside = inside && a.x >= 0 && a.y >= 0 && a.x <= 64 && a.y <= 64;
    }
    if (!inside) continue;
    EXPECT_LE(std::fabs(count - polygon_area(poly)), 1.5 * perimeter);
  }
}

TEST(Fuse, HairWinsOverEye) {
  Mask skin(4, 4, 1), eye(4, 4), hair(4, 4);
  eye(1, 1) = 1;
  eye(2, 1) = 1;
  hair(1, 1) = 1;
  const std::vector<PartMask> parts{{CategoryId::kLeftEye, eye}};
  const auto labels = fuse(skin, parts, hair, 4, 4);
  EXPECT_EQ(labels.at(1, 1), CategoryId::kHair);
  EXPECT_EQ(labels.at(2, 1), CategoryId::kLeftEye);
  EXPECT_EQ(labels.at(0, 0), CategoryId::kSkin);
}

TEST(Fuse, EmptyLayersGiveBackground) {
  const Mask empty(5, 3);
  const auto labels = fuse(empty, {}, empty, 5, 3);
  EXPECT_EQ(labels, LabelMap(5, 3));
}

TEST(Fuse, DimensionMismatchIsRejected) {
  const Mask a(4, 4), b(4, 5);
  EXPECT_THROW(fuse(a, {}, b, 4, 4), Error);
  const std::vector<PartMask> parts{{CategoryId::kNose, b}};
  EXPECT_THROW(fuse(a, parts, a, 4, 4), Error);
}

TEST(Fuse, LastWriterWinsOnRandomLayers) {
  Rng rng(103);
  for (int trial = 0; trial < 1000; ++trial) {
    const Mask skin = testing::random_mask(rng, 16, 16, 0.6);
    const Mask hair = testing::random_mask(rng, 16, 16, 0.2);
    std::vector<PartMask> parts;
    std::vector<std::pair<int, Mask>> oracle_parts;
    for (int id = 2; id <= 9; ++id) {
      if (testing::uniform_int(rng, 0, 3) == 0) continue;
      Mask m = testing::random_mask(rng, 16, 16, 0.15);
      parts.emplace_back(static_cast<CategoryId>(id), m);
      oracle_parts.emplace_back(id, m);
    }
    const auto labels = fuse(skin, parts, hair, 16, 16);
    const auto want = testing::fuse_oracle(skin, oracle_parts, hair);
    ASSERT_EQ(std::vector<std::uint8_t>(labels.data().begin(), labels.data().end()), want);
  }
}

TEST(Fuse, DisjointPartsAreOrderIndependent) {
  Rng rng(104);
  for (int trial = 0; trial < 100; ++trial) {
    Mask a(16, 16), b(16, 16);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const int r = testing::uniform_int(rng, 0, 2);
      a[i] = r == 1;
      b[i] = r == 2;
    }
    const Mask skin = testing::random_mask(rng, 16, 16);
    const Mask hair = testing::random_mask(rng, 16, 16, 0.1);
    const std::vector<PartMask> ab{{CategoryId::kNose, a}, {CategoryId::kLeftEye, b}};
    const std::vector<PartMask> ba{{CategoryId::kLeftEye, b}, {CategoryId::kNose, a}};
    EXPECT_EQ(fuse(skin, ab, hair, 16, 16), fuse(skin, ba, hair, 16, 16));
  }
}

TEST(AnnotateFace, PartsOnlyUsesFittedLabels) {
  const auto lm = testing::fixture_landmarks("f001");
  const auto ann = annotate_face(lm, default_part_schema(), 128, 128);
  std::set<int> seen;
  for (std::size_t i = 0; i < ann.labels.size(); ++i) seen.insert(ann.labels[i]);
  EXPECT_EQ(seen, (std::set<int>{0, 2, 3, 4, 5, 6, 7, 8, 9}));
}

TEST(AnnotateFace, EqualsFuseOfRasterizedParts) {
  const auto lm = testing::fixture_landmarks("f002");
  const auto ann = annotate_face(lm, default_part_schema(), 128, 128);
  std::vector<PartMask> parts;
  for (const auto& p : ann.parts) parts.emplace_back(p.category, rasterize(p.contour, 128, 128));
  const Mask none(128, 128);
  EXPECT_EQ(ann.labels, fuse(none, parts, none, 128, 128));
}

}  // namespace
}  // namespace faceparse
