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

#include "faceparse/metrics.hpp"

#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace faceparse {
namespace {

struct Counts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
};

Counts merged_counts(const ConfusionCounts& counts, int merged) {
  Counts out;
  for (int g = 0; g < kNumCategories; ++g) {
    const bool g_in = merged_class_of(static_cast<CategoryId>(g)) == merged;
    for (int p = 0; p < kNumCategories; ++p) {
      const bool p_in = merged_class_of(static_cast<CategoryId>(p)) == merged;
      const std::uint64_t n = counts.cell(g, p);
      if (g_in && p_in) {
        out.tp += n;
      } else if (p_in) {
        out.fp += n;
      } else if (g_in) {
        out.fn += n;
      }
    }
  }
  return out;
}

}  // namespace

std::uint64_t ConfusionCounts::tp(int c) const { return matrix_[c][c]; }

std::uint64_t ConfusionCounts::fp(int c) const {
  std::uint64_t column = 0;
  for (int g = 0; g < kNumCategories; ++g) column += matrix_[g][c];
  return column - matrix_[c][c];
}

std::uint64_t ConfusionCounts::fn(int c) const {
  std::uint64_t row = 0;
  for (int p = 0; p < kNumCategories; ++p) row += matrix_[c][p];
  return row - matrix_[c][c];
}

std::uint64_t ConfusionCounts::total() const {
  std::uint64_t n = 0;
  for (const auto& row : matrix_) n = std::accumulate(row.begin(), row.end(), n);
  return n;
}

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& other) {
  for (int g = 0; g < kNumCategories; ++g) {
    for (int p = 0; p < kNumCategories; ++p) matrix_[g][p] += other.matrix_[g][p];
  }
  return *this;
}

ConfusionCounts accumulate(const LabelMap& pred, const LabelMap& gt, ConfusionCounts acc) {
  if (!pred.same_shape(gt)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "prediction is " + std::to_string(pred.width()) + "x" +
                    std::to_string(pred.height()) + ", ground truth is " +
                    std::to_string(gt.width()) + "x" + std::to_string(gt.height()));
  }
  for (std::size_t i = 0; i < gt.size(); ++i) acc.add(gt[i], pred[i]);
  return acc;
}

PrfScore prf(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
  PrfScore s;
  const auto ratio = [](std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  s.precision = ratio(tp, tp + fp);
  s.recall = ratio(tp, tp + fn);
  const double denom = s.precision + s.recall;
  s.f1 = denom == 0.0 ? 0.0 : 2.0 * s.precision * s.recall / denom;
  return s;
}

double f1(const ConfusionCounts& counts, CategoryId category) {
  const int c = static_cast<int>(category);
  return prf(counts.tp(c), counts.fp(c), counts.fn(c)).f1;
}

double mean_f1(std::span<const double> per_category) {
  if (per_category.size() != kNumForeground) {
    throw Error(ErrorCode::kWrongArity,
                "mean F1 needs " + std::to_string(kNumForeground) + " values, got " +
                    std::to_string(per_category.size()));
  }
  double sum = 0.0;
  for (double v : per_category) sum += v;
  return sum / kNumForeground;
}

int merged_class_of(CategoryId category) {
  switch (category) {
    case CategoryId::kLeftEyebrow:
    case CategoryId::kRightEyebrow:
      return static_cast<int>(MergedClass::kBrows);
    case CategoryId::kLeftEye:
    case CategoryId::kRightEye:
      return static_cast<int>(MergedClass::kEyes);
    case CategoryId::kNose:
      return static_cast<int>(MergedClass::kNose);
    case CategoryId::kUpperLip:
    case CategoryId::kInnerMouth:
    case CategoryId::kLowerLip:
      return static_cast<int>(MergedClass::kMouth);
    default:
      return -1;
  }
}

CategoryScores score(const ConfusionCounts& counts, OverallMode mode) {
  CategoryScores s;
  s.overall_mode = mode;
  std::array<double, kNumForeground> foreground{};
  for (int c = 0; c < kNumCategories; ++c) {
    s.per_category[c] = prf(counts.tp(c), counts.fp(c), counts.fn(c));
    if (c > 0) foreground[c - 1] = s.per_category[c].f1;
  }
  s.mean_f1 = mean_f1(foreground);

  Counts micro;
  double macro = 0.0;
  for (int m = 0; m < kNumMergedClasses; ++m) {
    const Counts mc = merged_counts(counts, m);
    s.merged[m] = prf(mc.tp, mc.fp, mc.fn);
    micro.tp += mc.tp;
    micro.fp += mc.fp;
    micro.fn += mc.fn;
    macro += s.merged[m].f1;
  }
  s.overall = mode == OverallMode::kMicro ? prf(micro.tp, micro.fp, micro.fn).f1
                                          : macro / kNumMergedClasses;
  return s;
}

CategoryScores merged_scores(std::span<const LabelMap> preds, std::span<const LabelMap> gts,
                             OverallMode mode) {
  if (preds.size() != gts.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "prediction and ground-truth counts differ");
  }
  ConfusionCounts counts;
  for (std::size_t i = 0; i < preds.size(); ++i) counts = accumulate(preds[i], gts[i], counts);
  return score(counts, mode);
}

double round_to_hundredths(double value) {
  // printf rounds the exact binary value, unlike round(v * 100) / 100.
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return std::strtod(buf, nullptr);
}

double to_percent(double fraction) { return round_to_hundredths(fraction * 100.0); }

std::string format_percent(double fraction) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
  return buf;
}

std::string format_score_tables(const CategoryScores& s) {
  std::ostringstream out;
  const auto row = [&](std::string_view name, const std::string& value) {
    out << "  " << name;
    for (std::size_t i = name.size(); i < 14; ++i) out << ' ';
    out << value << '\n';
  };
  // hair first, background last, matching the usual result-table layout
  static constexpr int kFineOrder[] = {10, 1, 2, 3, 4, 5, 6, 7, 8, 9, 0};
  out << "Per-category F1 (%)\n";
  for (int c : kFineOrder) row(kCategoryNames[c], format_percent(s.per_category[c].f1));
  row("mean", format_percent(s.mean_f1));
  out << "Merged F1 (%)\n";
  static constexpr int kMergedFine[] = {1, 6, 7, 8, 9};
  for (int c : kMergedFine) row(kCategoryNames[c], format_percent(s.per_category[c].f1));
  for (int m = 0; m < kNumMergedClasses; ++m) {
    if (m == static_cast<int>(MergedClass::kNose)) continue;
    row(kMergedNames[m], format_percent(s.merged[m].f1));
  }
  row(s.overall_mode == OverallMode::kMicro ? "overall" : "overall(macro)",
      format_percent(s.overall));
  return out.str();
}

std::string scores_to_json(const CategoryScores& s, const ConfusionCounts& counts,
                           int images) {
  nlohmann::ordered_json doc;
  doc["images"] = images;
  doc["pixels"] = counts.total();
  auto& per = doc["categories"];
  for (int c = 0; c < kNumCategories; ++c) {
    nlohmann::ordered_json entry;
    entry["id"] = c;
    entry["name"] = kCategoryNames[c];
    entry["tp"] = counts.tp(c);
    entry["fp"] = counts.fp(c);
    entry["fn"] = counts.fn(c);
    entry["precision"] = s.per_category[c].precision;
    entry["recall"] = s.per_category[c].recall;
    entry["f1"] = s.per_category[c].f1;
    entry["f1_percent"] = to_percent(s.per_category[c].f1);
    per.push_back(entry);
  }
  doc["mean_f1"] = s.mean_f1;
  doc["mean_f1_percent"] = to_percent(s.mean_f1);
  auto& merged = doc["merged"];
  for (int m = 0; m < kNumMergedClasses; ++m) {
    nlohmann::ordered_json entry;
    entry["name"] = kMergedNames[m];
    entry["precision"] = s.merged[m].precision;
    entry["recall"] = s.merged[m].recall;
    entry["f1"] = s.merged[m].f1;
    entry["f1_percent"] = to_percent(s.merged[m].f1);
    merged.push_back(entry);
  }
  doc["overall_mode"] = s.overall_mode == OverallMode::kMicro ? "micro" : "macro";
  doc["overall"] = s.overall;
  doc["overall_percent"] = to_percent(s.overall);
  return doc.dump(2);
}

}  // namespace faceparse
