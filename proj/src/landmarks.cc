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

#include "faceparse/landmarks.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include "faceparse/image_io.hpp"

namespace faceparse {
namespace {

bool coordinate_ok(double v) { return std::isfinite(v) && std::fabs(v) < kMaxCoordinate; }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

template <typename T>
bool parse_number(std::string_view token, T& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

LandmarkSet::LandmarkSet() { visible_.fill(true); }

LandmarkSet::LandmarkSet(const Points& points, int image_width, int image_height)
    : points_(points), image_width_(image_width), image_height_(image_height) {
  visible_.fill(true);
  validate();
}

LandmarkSet::LandmarkSet(const Points& points, const Visibility& visible,
                         int image_width, int image_height)
    : points_(points),
      visible_(visible),
      image_width_(image_width),
      image_height_(image_height) {
  validate();
}

void LandmarkSet::validate() const {
  for (int i = 0; i < kNumLandmarks; ++i) {
    if (!coordinate_ok(points_[i].x) || !coordinate_ok(points_[i].y)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "landmark " + std::to_string(i) + " is not finite or out of range");
    }
  }
  if (image_width_ < 0 || image_height_ < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative image dimensions");
  }
}

bool LandmarkSet::all_visible() const {
  for (bool v : visible_) {
    if (!v) return false;
  }
  return true;
}

LandmarkSet LandmarkSet::with_point(int index, Point p) const {
  if (index < 0 || index >= kNumLandmarks) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "landmark index " + std::to_string(index) + " out of range");
  }
  Points moved = points_;
  moved[index] = p;
  return LandmarkSet(moved, visible_, image_width_, image_height_);
}

LandmarkSet LandmarkSet::with_frame(int image_width, int image_height) const {
  return LandmarkSet(points_, visible_, image_width, image_height);
}

LandmarkSet parse_landmark_file(std::string_view text, int image_width,
                                int image_height) {
  std::vector<std::pair<int, std::string_view>> lines;  // (line number, content)
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    ++line_no;
    const auto line = trim(text.substr(pos, end - pos));
    if (!line.empty()) lines.emplace_back(line_no, line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (lines.empty()) throw Error(ErrorCode::kMalformedLine, "empty landmark file");

  long long count = 0;
  if (!parse_number(lines.front().second, count)) {
    throw Error(ErrorCode::kMalformedLine,
                "line " + std::to_string(lines.front().first) +
                    ": expected point count, got '" + std::string(lines.front().second) + "'");
  }
  const auto coordinate_lines = static_cast<long long>(lines.size()) - 1;
  if (count != kNumLandmarks || coordinate_lines != count) {
    throw Error(ErrorCode::kCountMismatch,
                "expected " + std::to_string(kNumLandmarks) + " points, header says " +
                    std::to_string(count) + " and file has " +
                    std::to_string(coordinate_lines) + " coordinate lines");
  }

  LandmarkSet::Points points{};
  LandmarkSet::Visibility visible{};
  for (int i = 0; i < kNumLandmarks; ++i) {
    const auto& [number, line] = lines[static_cast<std::size_t>(i) + 1];
    const auto tokens = split_tokens(line);
    const auto fail = [&, number = number, line = line](const std::string& why) {
      return Error(ErrorCode::kMalformedLine, "line " + std::to_string(number) + ": " +
                                                  why + " ('" + std::string(line) + "')");
    };
    if (tokens.size() != 2 && tokens.size() != 3) throw fail("expected 'x y'");
    double x = 0.0;
    double y = 0.0;
    if (!parse_number(tokens[0], x) || !parse_number(tokens[1], y)) {
      throw fail("non-numeric coordinate");
    }
    if (!coordinate_ok(x) || !coordinate_ok(y)) throw fail("coordinate out of range");
    visible[i] = true;
    if (tokens.size() == 3) {
      if (tokens[2] == "0") {
        visible[i] = false;
      } else if (tokens[2] != "1") {
        throw fail("visibility flag must be 0 or 1");
      }
    }
    points[i] = {x, y};
  }
  return LandmarkSet(points, visible, image_width, image_height);
}

std::string format_coordinate(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed);
  if (ec != std::errc()) throw Error(ErrorCode::kInvalidArgument, "cannot format coordinate");
  return std::string(buf, ptr);
}

std::string serialize_landmarks(const LandmarkSet& landmarks) {
  const bool with_visibility = !landmarks.all_visible();
  std::string out = std::to_string(kNumLandmarks) + "\n";
  for (int i = 0; i < kNumLandmarks; ++i) {
    const Point& p = landmarks.point(i);
    out += format_coordinate(p.x);
    out += ' ';
    out += format_coordinate(p.y);
    if (with_visibility) out += landmarks.visible(i) ? " 1" : " 0";
    out += '\n';
  }
  return out;
}

LandmarkSet read_landmark_file(const std::filesystem::path& path, int image_width,
                               int image_height) {
  const auto bytes = read_file_bytes(path);
  return parse_landmark_file(
      std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
      image_width, image_height);
}

void write_landmark_file(const std::filesystem::path& path, const LandmarkSet& landmarks) {
  write_file_atomic(path, serialize_landmarks(landmarks));
}

}  // namespace faceparse
