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

#include "faceparse/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "log.hpp"

namespace faceparse {
namespace {

double clamped_log(double p) { return std::log(std::max(p, kLogClamp)); }

void require_shape(const ProbMap& p, int width, int height, const char* what) {
  if (p.width() != width || p.height() != height) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " is " + std::to_string(width) + "x" +
                    std::to_string(height) + " but predictions are " +
                    std::to_string(p.width()) + "x" + std::to_string(p.height()));
  }
}

// sum_i log p_{i, label_i}, scaled per pixel by `weight(i)`.
template <typename WeightFn>
double weighted_cross_entropy(const ProbMap& p, const LabelMap& labels, WeightFn weight) {
  require_shape(p, labels.width(), labels.height(), "label map");
  const std::size_t n = p.pixels();
  if (n == 0) return 0.0;
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = labels[i];
    if (label >= p.channels()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "label " + std::to_string(label) + " has no channel among " +
                      std::to_string(p.channels()));
    }
    terms[i] = weight(i) * clamped_log(p.at(i, label));
  }
  return -pairwise_sum(terms) / static_cast<double>(n);
}

}  // namespace

ProbMap::ProbMap(int width, int height, int channels, std::vector<double> values)
    : width_(width), height_(height), channels_(channels), values_(std::move(values)) {
  if (width < 0 || height < 0 || channels < 1) {
    throw Error(ErrorCode::kInvalidArgument, "invalid probability map shape");
  }
  if (values_.size() != pixels() * static_cast<std::size_t>(channels)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "probability map holds " + std::to_string(values_.size()) +
                    " values, shape needs " +
                    std::to_string(pixels() * static_cast<std::size_t>(channels)));
  }
  for (std::size_t i = 0; i < pixels(); ++i) {
    double sum = 0.0;
    for (int c = 0; c < channels_; ++c) {
      const double v = at(i, c);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::kInvalidProbabilities,
                    "probability outside [0, 1] at pixel " + std::to_string(i));
      }
      sum += v;
    }
    if (channels_ > 1 && std::fabs(sum - 1.0) > 1e-6) {
      throw Error(ErrorCode::kInvalidProbabilities,
                  "probabilities at pixel " + std::to_string(i) + " sum to " +
                      std::to_string(sum));
    }
  }
}

ProbMap ProbMap::uniform(int width, int height, int channels) {
  return ProbMap(width, height, channels,
                 std::vector<double>(static_cast<std::size_t>(width) * height * channels,
                                     1.0 / channels));
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 8;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double semantic_loss(const ProbMap& p, const LabelMap& labels) {
  return weighted_cross_entropy(p, labels, [](std::size_t) { return 1.0; });
}

BoundaryLossResult boundary_loss_detail(const ProbMap& p, const BoundaryMap& y,
                                        bool balance) {
  require_shape(p, y.width(), y.height(), "boundary map");
  if (p.channels() != 1) {
    throw Error(ErrorCode::kDimensionMismatch, "boundary predictions must be single-channel");
  }
  const std::size_t n = p.pixels();
  if (n == 0) return {0.0, balance};
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n; ++i) positives += y[i] ? 1 : 0;
  const std::size_t negatives = n - positives;

  BoundaryLossResult result;
  result.balanced = balance;
  double pos_weight = 1.0;
  double neg_weight = 1.0;
  if (balance) {
    if (positives == 0 || negatives == 0) {
      log_warning("boundary loss: only one class present, balancing disabled");
      result.balanced = false;
    } else {
      pos_weight = static_cast<double>(negatives) / static_cast<double>(n);
      neg_weight = static_cast<double>(positives) / static_cast<double>(n);
    }
  }
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double pb = p.at(i, 0);
    terms[i] = y[i] ? pos_weight * clamped_log(pb) : neg_weight * clamped_log(1.0 - pb);
  }
  result.value = -pairwise_sum(terms) / static_cast<double>(n);
  return result;
}

double boundary_loss(const ProbMap& p, const BoundaryMap& y, bool balance) {
  return boundary_loss_detail(p, y, balance).value;
}

double fusion_loss(const ProbMap& p, const LabelMap& labels, const WeightMap& w) {
  if (w.width() != labels.width() || w.height() != labels.height()) {
    throw Error(ErrorCode::kDimensionMismatch, "weight map and label map differ in size");
  }
  return weighted_cross_entropy(p, labels, [&](std::size_t i) { return w[i]; });
}

double total_loss(double semantic, double boundary, double fusion,
                  const LossWeights& lambda) {
  return lambda.semantic * semantic + lambda.boundary * boundary + lambda.fusion * fusion;
}

}  // namespace faceparse
