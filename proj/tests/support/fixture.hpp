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
#include <random>
#include <string>

#include "faceparse/landmarks.hpp"

namespace faceparse::testing {

inline std::filesystem::path test_data_dir() { return FACEPARSE_TEST_DATA_DIR; }
inline std::filesystem::path fixture_dir() { return test_data_dir() / "fixture"; }
inline std::filesystem::path golden_dir() { return test_data_dir() / "golden"; }

inline LandmarkSet fixture_landmarks(const std::string& id) {
  return read_landmark_file(fixture_dir() / "landmarks" / (id + ".txt"), 128, 128);
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  std::random_device rd;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("faceparse_" + name + "_" + std::to_string(rd()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace faceparse::testing
