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

#include <array>
#include <filesystem>
#include <string>
#include <string_view>

#include "faceparse/types.hpp"

namespace faceparse {

inline constexpr int kNumLandmarks = 106;

// Coordinates beyond this magnitude are rejected as corrupt.
inline constexpr double kMaxCoordinate = 1e6;

// 106 sub-pixel landmarks of one face. Points may lie outside the image
// (profile faces), so the frame size is carried but not enforced.
class LandmarkSet {
 public:
  using Points = std::array<Point, kNumLandmarks>;
  using Visibility = std::array<bool, kNumLandmarks>;

  LandmarkSet();
  explicit LandmarkSet(const Points& points, int image_width = 0,
                       int image_height = 0);
  LandmarkSet(const Points& points, const Visibility& visible,
              int image_width = 0, int image_height = 0);

  const Points& points() const { return points_; }
  const Visibility& visibility() const { return visible_; }
  const Point& point(int index) const { return points_.at(index); }
  bool visible(int index) const { return visible_.at(index); }
  bool all_visible() const;

  int image_width() const { return image_width_; }
  int image_height() const { return image_height_; }

  // Returns a copy with one point moved; the receiver is unchanged.
  LandmarkSet with_point(int index, Point p) const;
  LandmarkSet with_frame(int image_width, int image_height) const;

  friend bool operator==(const LandmarkSet&, const LandmarkSet&) = default;

 private:
  void validate() const;

  Points points_{};
  Visibility visible_{};
  int image_width_ = 0;
  int image_height_ = 0;
};

// Text format: first line is the point count, then one "x y" line per point.
// An optional third token 0/1 carries visibility; it is written only when
// some point is invisible.
LandmarkSet parse_landmark_file(std::string_view text, int image_width = 0,
                                int image_height = 0);
std::string serialize_landmarks(const LandmarkSet& landmarks);

LandmarkSet read_landmark_file(const std::filesystem::path& path,
                               int image_width = 0, int image_height = 0);
void write_landmark_file(const std::filesystem::path& path,
                         const LandmarkSet& landmarks);

// Shortest fixed-point text that parses back to exactly `v`.
std::string format_coordinate(double v);

}  // namespace faceparse
