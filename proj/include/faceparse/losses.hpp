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
#include <vector>

#include "faceparse/boundary.hpp"
#include "faceparse/label_map.hpp"

namespace faceparse {

// Reference implementations of the three branch losses and their weighted
// total. Every reduction goes through pairwise_sum, so results do not
// depend on threading or input length parity.

inline constexpr double kLogClamp = 1e-12;

// Per-pixel probability vectors, stored height x width x channels.
class ProbMap {
 public:
  // Multi-channel maps must sum to 1 per pixel within 1e-6; single-channel
  // maps only need values in [0, 1]. Throws InvalidProbabilities.
  ProbMap(int width, int height, int channels, std::vector<double> values);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t pixels() const { return static_cast<std::size_t>(width_) * height_; }
  double at(std::size_t pixel, int channel) const {
    return values_[pixel * channels_ + channel];
  }
  const std::vector<double>& values() const { return values_; }

  static ProbMap uniform(int width, int height, int channels);

 private:
  int width_;
  int height_;
  int channels_;
  std::vector<double> values_;
};

struct LossWeights {
  double semantic = 1.0;
  double boundary = 1.0;
  double fusion = 2.0;
};

// Fixed-shape tree reduction: the summation order depends only on length.
double pairwise_sum(std::span<const double> values);

double semantic_loss(const ProbMap& p, const LabelMap& labels);

struct BoundaryLossResult {
  double value = 0.0;
  // False when balancing was requested but one class was empty.
  bool balanced = false;
};

// Balanced mode scales positive terms by N_neg/N and negative terms by
// N_pos/N. With an empty class it falls back to the unbalanced loss.
BoundaryLossResult boundary_loss_detail(const ProbMap& p, const BoundaryMap& y,
                                        bool balance);
double boundary_loss(const ProbMap& p, const BoundaryMap& y, bool balance);

double fusion_loss(const ProbMap& p, const LabelMap& labels, const WeightMap& w);

double total_loss(double semantic, double boundary, double fusion,
                  const LossWeights& lambda);

}  // namespace faceparse
