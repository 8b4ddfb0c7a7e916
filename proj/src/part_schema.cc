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

#include "faceparse/part_schema.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

#include "faceparse/image_io.hpp"
#include "faceparse/landmarks.hpp"

namespace faceparse {

// Defined in the generated default_schema_data.cc.
extern const char kDefaultPartSchemaJson[];

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedSchema, what);
}

std::vector<int> index_list(const json& part, const char* key, std::size_t min_size,
                            const std::string& where) {
  if (!part.contains(key)) malformed(where + ": missing '" + key + "'");
  const json& list = part.at(key);
  if (!list.is_array()) malformed(where + ": '" + key + "' must be an array");
  std::vector<int> out;
  for (const json& v : list) {
    if (!v.is_number_integer()) malformed(where + ": '" + key + "' must hold integers");
    const auto idx = v.get<long long>();
    if (idx < 0 || idx >= kNumLandmarks) {
      throw Error(ErrorCode::kIndexOutOfRange, where + ": landmark index " +
                                                   std::to_string(idx) + " not in 0.." +
                                                   std::to_string(kNumLandmarks - 1));
    }
    out.push_back(static_cast<int>(idx));
  }
  if (out.size() < min_size) {
    malformed(where + ": '" + key + "' needs at least " + std::to_string(min_size) +
              " indices");
  }
  return out;
}

int positive_int(const json& part, const char* key, int fallback, int min_value,
                 const std::string& where) {
  if (!part.contains(key)) return fallback;
  const json& v = part.at(key);
  if (!v.is_number_integer() || v.get<long long>() < min_value ||
      v.get<long long>() > 1024) {
    malformed(where + ": '" + key + "' must be an integer in " +
              std::to_string(min_value) + "..1024");
  }
  return static_cast<int>(v.get<long long>());
}

PartEntry parse_entry(const json& part, std::size_t position) {
  std::string where = "part " + std::to_string(position);
  if (!part.is_object()) malformed(where + ": expected an object");
  if (!part.contains("category") || !part.at("category").is_string()) {
    malformed(where + ": missing 'category'");
  }
  const auto name = part.at("category").get<std::string>();
  where += " (" + name + ")";
  const auto category = category_from_name(name);
  if (!category) malformed(where + ": unknown category");
  if (!is_fitted_category(*category)) {
    malformed(where + ": background, skin and hair come from masks, not landmarks");
  }
  if (!part.contains("strategy") || !part.at("strategy").is_string()) {
    throw Error(ErrorCode::kBadStrategy, where + ": missing 'strategy'");
  }
  const auto strategy = part.at("strategy").get<std::string>();

  PartEntry entry;
  entry.category = *category;
  if (strategy == "polygon") {
    entry.strategy = FitStrategy::kPolygon;
    entry.indices = index_list(part, "indices", 3, where);
    entry.axis = {entry.indices.front(), entry.indices.back()};
  } else if (strategy == "parabola_pair") {
    entry.strategy = FitStrategy::kParabolaPair;
    entry.first_arc = index_list(part, "upper", 3, where);
    entry.second_arc = index_list(part, "lower", 3, where);
    entry.axis = {entry.first_arc.front(), entry.first_arc.back()};
  } else if (strategy == "piecewise_nose") {
    entry.strategy = FitStrategy::kPiecewiseNose;
    entry.first_arc = index_list(part, "left", 2, where);
    entry.second_arc = index_list(part, "right", 2, where);
    entry.axis = {entry.first_arc.front(), entry.first_arc.back()};
  } else {
    throw Error(ErrorCode::kBadStrategy, where + ": unknown strategy '" + strategy + "'");
  }
  if (entry.strategy != FitStrategy::kPolygon) {
    if (part.contains("indices")) {
      malformed(where + ": 'indices' is derived from the arc lists for " + strategy);
    }
    entry.indices = entry.first_arc;
    entry.indices.insert(entry.indices.end(), entry.second_arc.begin(),
                         entry.second_arc.end());
  }

  entry.density = positive_int(part, "density", 4, 1, where);
  entry.samples = positive_int(part, "samples", 16, 3, where);
  if (part.contains("closed")) {
    if (!part.at("closed").is_boolean()) malformed(where + ": 'closed' must be a boolean");
    entry.closed = part.at("closed").get<bool>();
  }
  if (part.contains("axis")) {
    const auto axis = index_list(part, "axis", 2, where);
    if (axis.size() != 2) malformed(where + ": 'axis' must hold exactly two indices");
    for (int idx : axis) {
      if (std::find(entry.indices.begin(), entry.indices.end(), idx) == entry.indices.end()) {
        malformed(where + ": axis index " + std::to_string(idx) + " is not part of the entry");
      }
    }
    entry.axis = {axis[0], axis[1]};
  }
  return entry;
}

}  // namespace

std::string_view strategy_name(FitStrategy s) {
  switch (s) {
    case FitStrategy::kPolygon: return "polygon";
    case FitStrategy::kParabolaPair: return "parabola_pair";
    case FitStrategy::kPiecewiseNose: return "piecewise_nose";
  }
  return "unknown";
}

PartSchema::PartSchema(std::string name, std::vector<PartEntry> entries)
    : name_(std::move(name)), entries_(std::move(entries)) {
  std::set<CategoryId> seen;
  for (const auto& e : entries_) {
    if (!is_fitted_category(e.category)) {
      malformed(std::string(category_name(e.category)) + " cannot be a fitted part");
    }
    for (int idx : e.indices) {
      if (idx < 0 || idx >= kNumLandmarks) {
        throw Error(ErrorCode::kIndexOutOfRange,
                    "landmark index " + std::to_string(idx) + " out of range");
      }
    }
    if (!seen.insert(e.category).second) {
      throw Error(ErrorCode::kDuplicateCategory,
                  "category '" + std::string(category_name(e.category)) +
                      "' appears more than once");
    }
  }
  for (int id = 0; id < kNumCategories; ++id) {
    const auto category = static_cast<CategoryId>(id);
    if (is_fitted_category(category) && !seen.count(category)) {
      throw Error(ErrorCode::kMissingCategory,
                  "no entry for category '" + std::string(category_name(category)) + "'");
    }
  }
}

const PartEntry* PartSchema::find(CategoryId category) const {
  for (const auto& e : entries_) {
    if (e.category == category) return &e;
  }
  return nullptr;
}

PartSchema load_part_schema(std::string_view config) {
  json doc;
  try {
    doc = json::parse(config.begin(), config.end());
  } catch (const json::parse_error& e) {
    malformed(std::string("schema is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) malformed("schema root must be an object");
  std::string name = "unnamed";
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) malformed("'name' must be a string");
    name = doc.at("name").get<std::string>();
  }
  if (!doc.contains("parts") || !doc.at("parts").is_array()) {
    malformed("schema needs a 'parts' array");
  }
  std::vector<PartEntry> entries;
  std::size_t position = 0;
  for (const json& part : doc.at("parts")) entries.push_back(parse_entry(part, position++));
  return PartSchema(std::move(name), std::move(entries));
}

PartSchema load_part_schema_file(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  return load_part_schema(
      std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::string_view default_part_schema_text() { return kDefaultPartSchemaJson; }

const PartSchema& default_part_schema() {
  static const PartSchema schema = load_part_schema(default_part_schema_text());
  return schema;
}

}  // namespace faceparse
