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

#include "faceparse/dataset.hpp"

#include <fstream>
#include <set>

#include "faceparse/types.hpp"
#include "json.hpp"

namespace faceparse {
namespace fs = std::filesystem;

namespace {

std::vector<std::string> read_split_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kMissingSplitFile, "missing split file " + path.string());
  }
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    ids.push_back(line.substr(first, last - first + 1));
  }
  return ids;
}

std::optional<fs::path> find_with_extension(const fs::path& dir, const std::string& id,
                                            std::initializer_list<const char*> exts) {
  for (const char* ext : exts) {
    fs::path candidate = dir / (id + ext);
    if (fs::is_regular_file(candidate)) return candidate;
  }
  return std::nullopt;
}

}  // namespace

DatasetManifest::DatasetManifest(fs::path root, std::array<std::vector<std::string>, 3> splits,
                                 std::map<std::string, SampleFiles> samples)
    : root_(std::move(root)), splits_(std::move(splits)), samples_(std::move(samples)) {
  std::set<std::string> seen;
  for (const auto& split : splits_) {
    for (const auto& id : split) {
      if (!seen.insert(id).second) {
        throw Error(ErrorCode::kInvalidArgument,
                    "sample '" + id + "' is listed more than once across splits");
      }
      if (!samples_.count(id)) {
        throw Error(ErrorCode::kDanglingId, "sample '" + id + "' has no file record");
      }
    }
  }
}

const SampleFiles& DatasetManifest::sample(const std::string& id) const {
  const auto it = samples_.find(id);
  if (it == samples_.end()) throw Error(ErrorCode::kDanglingId, "unknown sample '" + id + "'");
  return it->second;
}

std::vector<std::string> DatasetManifest::ordered_ids() const {
  std::vector<std::string> ids;
  for (const auto& split : splits_) ids.insert(ids.end(), split.begin(), split.end());
  return ids;
}

std::optional<std::string> DatasetManifest::next_after(const std::string& id) const {
  const auto ids = ordered_ids();
  for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
    if (ids[i] == id) return ids[i + 1];
  }
  return std::nullopt;
}

DatasetManifest scan_dataset(const fs::path& root) {
  if (!fs::is_directory(root)) {
    throw Error(ErrorCode::kIo, "dataset root " + root.string() + " is not a directory");
  }
  std::array<std::vector<std::string>, 3> splits;
  std::map<std::string, SampleFiles> samples;
  for (int s = 0; s < 3; ++s) {
    splits[s] = read_split_file(root / (std::string(kSplitNames[s]) + ".txt"));
    for (const auto& id : splits[s]) {
      SampleFiles files;
      files.id = id;
      files.split = static_cast<Split>(s);
      files.landmarks = root / "landmarks" / (id + ".txt");
      if (!fs::is_regular_file(files.landmarks)) {
        throw Error(ErrorCode::kDanglingId,
                    "sample '" + id + "' has no landmark file " + files.landmarks.string());
      }
      files.image = find_with_extension(root / "images", id, {".png", ".jpg", ".jpeg", ".pgm"});
      files.labels = find_with_extension(root / "labels", id, {".png"});
      samples.emplace(id, std::move(files));
    }
  }
  return DatasetManifest(root, std::move(splits), std::move(samples));
}

std::string manifest_to_json(const DatasetManifest& m) {
  nlohmann::ordered_json doc;
  doc["root"] = m.root().string();
  for (int s = 0; s < 3; ++s) {
    doc["splits"][std::string(kSplitNames[s])] = m.split(static_cast<Split>(s));
  }
  auto& samples = doc["samples"];
  samples = nlohmann::ordered_json::array();
  for (const auto& [id, files] : m.samples()) {
    nlohmann::ordered_json entry;
    entry["id"] = id;
    entry["split"] = kSplitNames[static_cast<int>(files.split)];
    entry["image"] = files.image ? nlohmann::ordered_json(files.image->string()) : nullptr;
    entry["landmarks"] = files.landmarks.string();
    entry["labels"] = files.labels ? nlohmann::ordered_json(files.labels->string()) : nullptr;
    samples.push_back(entry);
  }
  return doc.dump(2);
}

DatasetManifest manifest_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
    std::array<std::vector<std::string>, 3> splits;
    for (int s = 0; s < 3; ++s) {
      splits[s] = doc.at("splits").at(std::string(kSplitNames[s])).get<std::vector<std::string>>();
    }
    std::map<std::string, SampleFiles> samples;
    for (const auto& entry : doc.at("samples")) {
      SampleFiles files;
      files.id = entry.at("id").get<std::string>();
      const auto split = entry.at("split").get<std::string>();
      bool found = false;
      for (int s = 0; s < 3; ++s) {
        if (kSplitNames[s] == split) {
          files.split = static_cast<Split>(s);
          found = true;
        }
      }
      if (!found) throw Error(ErrorCode::kInvalidArgument, "unknown split '" + split + "'");
      if (!entry.at("image").is_null()) files.image = entry.at("image").get<std::string>();
      files.landmarks = entry.at("landmarks").get<std::string>();
      if (!entry.at("labels").is_null()) files.labels = entry.at("labels").get<std::string>();
      samples.emplace(files.id, std::move(files));
    }
    return DatasetManifest(doc.at("root").get<std::string>(), std::move(splits),
                           std::move(samples));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("malformed manifest JSON: ") + e.what());
  }
}

void write_split_files(const DatasetManifest& manifest, const fs::path& root) {
  fs::create_directories(root);
  for (int s = 0; s < 3; ++s) {
    std::ofstream out(root / (std::string(kSplitNames[s]) + ".txt"), std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write split files under " + root.string());
    for (const auto& id : manifest.split(static_cast<Split>(s))) out << id << '\n';
  }
}

}  // namespace faceparse
