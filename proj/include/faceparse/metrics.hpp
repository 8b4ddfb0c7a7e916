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
#include <span>
#include <string>
#include <string_view>

#include "faceparse/label_map.hpp"

namespace faceparse {

// Full gt x pred pixel confusion matrix over the 11 categories. TP/FP/FN
// are derived from it, and merged-class counts are exact block sums.
class ConfusionCounts {
 public:
  using Matrix = std::array<std::array<std::uint64_t, kNumCategories>, kNumCategories>;

  std::uint64_t tp(int category) const;
  std::uint64_t fp(int category) const;
  std::uint64_t fn(int category) const;
  std::uint64_t cell(int gt, int pred) const { return matrix_[gt][pred]; }
  std::uint64_t total() const;
  const Matrix& matrix() const { return matrix_; }

  void add(int gt, int pred, std::uint64_t n = 1) { matrix_[gt][pred] += n; }
  ConfusionCounts& operator+=(const ConfusionCounts& other);

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;

 private:
  Matrix matrix_{};
};

// Throws DimensionMismatch.
ConfusionCounts accumulate(const LabelMap& pred, const LabelMap& gt,
                           ConfusionCounts acc = {});

struct PrfScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Any 0/0 ratio is reported as 0.
PrfScore prf(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn);
double f1(const ConfusionCounts& counts, CategoryId category);

inline constexpr int kNumForeground = 10;

// Mean over ids 1..10. Throws WrongArity.
double mean_f1(std::span<const double> per_category);

enum class MergedClass { kBrows = 0, kEyes, kNose, kMouth };
inline constexpr int kNumMergedClasses = 4;
inline constexpr std::array<std::string_view, kNumMergedClasses> kMergedNames = {
    "brows", "eyes", "nose", "mouth"};

// Coarse label used for merged scoring: eyebrows -> brows, eyes -> eyes,
// lips and inner mouth -> mouth. Other ids map to -1.
int merged_class_of(CategoryId category);

enum class OverallMode { kMicro, kMacro };

struct CategoryScores {
  std::array<PrfScore, kNumCategories> per_category{};
  double mean_f1 = 0.0;  // foreground ids 1..10
  std::array<PrfScore, kNumMergedClasses> merged{};
  double overall = 0.0;  // over brows, eyes, nose, mouth
  OverallMode overall_mode = OverallMode::kMicro;
};

CategoryScores score(const ConfusionCounts& counts,
                     OverallMode mode = OverallMode::kMicro);

// Convenience over a stream of (pred, gt) pairs.
CategoryScores merged_scores(std::span<const LabelMap> preds,
                             std::span<const LabelMap> gts,
                             OverallMode mode = OverallMode::kMicro);

// Nearest value with two decimals, rounding the exact binary value.
double round_to_hundredths(double value);
// Percent with two decimals, as printed in result tables.
double to_percent(double fraction);
std::string format_percent(double fraction);

// Fine-grained table (hair .. background, mean) and merged table
// (skin, nose, lips, brows, eyes, mouth, overall).
std::string format_score_tables(const CategoryScores& scores);
std::string scores_to_json(const CategoryScores& scores, const ConfusionCounts& counts,
                           int images);

}  // namespace faceparse
