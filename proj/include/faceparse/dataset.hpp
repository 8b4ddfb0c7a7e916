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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace faceparse {

enum class Split { kTrain = 0, kVal = 1, kTest = 2 };
inline constexpr std::array<std::string_view, 3> kSplitNames = {"train", "val", "test"};

struct SampleFiles {
  std::string id;
  Split split = Split::kTrain;
  std::optional<std::filesystem::path> image;
  std::filesystem::path landmarks;
  std::optional<std::filesystem::path> labels;

  friend bool operator==(const SampleFiles&, const SampleFiles&) = default;
};

// Layout under root:
//   train.txt val.txt test.txt   one sample id per line
//   images/<id>.{png,jpg,jpeg,pgm}
//   landmarks/<id>.txt
//   labels/<id>.png              optional
class DatasetManifest {
 public:
  DatasetManifest() = default;
  DatasetManifest(std::filesystem::path root,
                  std::array<std::vector<std::string>, 3> splits,
                  std::map<std::string, SampleFiles> samples);

  const std::filesystem::path& root() const { return root_; }
  const std::vector<std::string>& split(Split s) const {
    return splits_[static_cast<int>(s)];
  }
  const std::map<std::string, SampleFiles>& samples() const { return samples_; }
  const SampleFiles& sample(const std::string& id) const;
  bool contains(const std::string& id) const { return samples_.count(id) > 0; }

  // train, then val, then test, each in split-file order.
  std::vector<std::string> ordered_ids() const;
  std::optional<std::string> next_after(const std::string& id) const;

  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;

 private:
  std::filesystem::path root_;
  std::array<std::vector<std::string>, 3> splits_;
  std::map<std::string, SampleFiles> samples_;
};

// Throws MissingSplitFile, DanglingId, or InvalidArgument for ids listed in
// more than one split.
DatasetManifest scan_dataset(const std::filesystem::path& root);

std::string manifest_to_json(const DatasetManifest& manifest);
DatasetManifest manifest_from_json(std::string_view text);
void write_split_files(const DatasetManifest& manifest,
                       const std::filesystem::path& root);

}  // namespace faceparse
