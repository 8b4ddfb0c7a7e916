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
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace faceparse {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

// Label ids as stored in label-map files. The numbering is fixed.
enum class CategoryId : std::uint8_t {
  kBackground = 0,
  kSkin = 1,
  kLeftEyebrow = 2,
  kRightEyebrow = 3,
  kLeftEye = 4,
  kRightEye = 5,
  kNose = 6,
  kUpperLip = 7,
  kInnerMouth = 8,
  kLowerLip = 9,
  kHair = 10,
};

inline constexpr int kNumCategories = 11;

inline constexpr std::array<std::string_view, kNumCategories> kCategoryNames = {
    "background", "skin",     "left_eyebrow", "right_eyebrow",
    "left_eye",   "right_eye", "nose",        "upper_lip",
    "inner_mouth", "lower_lip", "hair"};

constexpr std::string_view category_name(CategoryId id) {
  return kCategoryNames[static_cast<std::size_t>(id)];
}

std::optional<CategoryId> category_from_name(std::string_view name);

constexpr bool is_valid_label(int v) { return v >= 0 && v < kNumCategories; }

// True for the eight categories produced by landmark fitting.
constexpr bool is_fitted_category(CategoryId id) {
  return id != CategoryId::kBackground && id != CategoryId::kSkin &&
         id != CategoryId::kHair;
}

enum class ErrorCode {
  kCountMismatch = 1,
  kMalformedLine,
  kIndexOutOfRange,
  kDuplicateCategory,
  kMissingCategory,
  kBadStrategy,
  kMalformedSchema,
  kDegeneratePart,
  kIllConditionedFit,
  kDimensionMismatch,
  kNegativeAlpha,
  kInvalidProbabilities,
  kWrongArity,
  kInvalidLabel,
  kMissingSplitFile,
  kDanglingId,
  kIo,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace faceparse
