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

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "faceparse/types.hpp"

namespace faceparse {

enum class FitStrategy { kPolygon, kParabolaPair, kPiecewiseNose };

std::string_view strategy_name(FitStrategy s);

// One fitted facial part. For kPolygon only `indices` is used. For
// kParabolaPair `first_arc`/`second_arc` are the upper/lower arcs, both
// running corner to corner in the same direction. For kPiecewiseNose they
// are the left/right halves, both running from the bridge top down to the
// bottom centre. `indices` is always the concatenation of everything used.
struct PartEntry {
  CategoryId category = CategoryId::kBackground;
  FitStrategy strategy = FitStrategy::kPolygon;
  std::vector<int> indices;
  std::vector<int> first_arc;
  std::vector<int> second_arc;
  int density = 4;
  bool closed = true;
  int samples = 16;
  // Landmark ids defining the canonical x-axis of the part frame.
  std::pair<int, int> axis{0, 0};
};

class PartSchema {
 public:
  PartSchema(std::string name, std::vector<PartEntry> entries);

  const std::string& name() const { return name_; }
  // Schema order; later entries overwrite earlier ones when fused.
  const std::vector<PartEntry>& entries() const { return entries_; }
  const PartEntry* find(CategoryId category) const;

 private:
  std::string name_;
  std::vector<PartEntry> entries_;
};

// JSON config; grammar documented in docs/part_schema.md.
PartSchema load_part_schema(std::string_view config);
PartSchema load_part_schema_file(const std::filesystem::path& path);

// The 106-point convention shipped with the library (data/schema).
const PartSchema& default_part_schema();
std::string_view default_part_schema_text();

}  // namespace faceparse
