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

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "faceparse/dataset.hpp"
#include "support/fixture.hpp"

namespace faceparse {
namespace {

namespace fs = std::filesystem;

void copy_fixture(const fs::path& to) {
  fs::copy(testing::fixture_dir(), to, fs::copy_options::recursive);
}

TEST(Dataset, FixtureSplitCounts) {
  const auto m = scan_dataset(testing::fixture_dir());
  EXPECT_EQ(m.split(Split::kTrain).size(), 4u);
  EXPECT_EQ(m.split(Split::kVal).size(), 1u);
  EXPECT_EQ(m.split(Split::kTest).size(), 1u);
  const auto& s = m.sample("f004");
  EXPECT_EQ(s.split, Split::kVal);
  ASSERT_TRUE(s.image.has_value());
  EXPECT_EQ(s.image->filename(), "f004.png");
  EXPECT_FALSE(s.labels.has_value());
  EXPECT_EQ(m.ordered_ids().front(), "f000");
  EXPECT_EQ(m.next_after("f003"), std::optional<std::string>("f004"));
  EXPECT_FALSE(m.next_after("f005").has_value());
}

TEST(Dataset, DanglingIdNamesTheSample) {
  const auto dir = testing::scratch_dir("dangling");
  copy_fixture(dir / "ds");
  std::ofstream(dir / "ds" / "test.txt", std::ios::app) << "ghost\n";
  try {
    scan_dataset(dir / "ds");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDanglingId);
    EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos);
  }
  fs::remove_all(dir);
}

TEST(Dataset, MissingSplitFile) {
  const auto dir = testing::scratch_dir("nosplit");
  copy_fixture(dir / "ds");
  fs::remove(dir / "ds" / "val.txt");
  try {
    scan_dataset(dir / "ds");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingSplitFile);
  }
  fs::remove_all(dir);
}

TEST(Dataset, OverlappingSplitsAreRejected) {
  const auto dir = testing::scratch_dir("overlap");
  copy_fixture(dir / "ds");
  std::ofstream(dir / "ds" / "val.txt", std::ios::app) << "f000\n";
  EXPECT_THROW(scan_dataset(dir / "ds"), Error);
  fs::remove_all(dir);
}

TEST(Dataset, CommentsAndBlankLinesAreSkipped) {
  const auto dir = testing::scratch_dir("comments");
  copy_fixture(dir / "ds");
  std::ofstream(dir / "ds" / "test.txt") << "# held out\n\n  f005  \n";
  EXPECT_EQ(scan_dataset(dir / "ds").split(Split::kTest), (std::vector<std::string>{"f005"}));
  fs::remove_all(dir);
}

TEST(Dataset, ManifestJsonRoundTrip) {
  const auto m = scan_dataset(testing::fixture_dir());
  const auto again = manifest_from_json(manifest_to_json(m));
  EXPECT_EQ(again, m);
  EXPECT_EQ(manifest_to_json(again), manifest_to_json(m));
}

TEST(Dataset, SplitFilesRoundTrip) {
  const auto dir = testing::scratch_dir("splits");
  copy_fixture(dir / "ds");
  const auto m = scan_dataset(dir / "ds");
  write_split_files(m, dir / "ds");
  EXPECT_EQ(scan_dataset(dir / "ds"), m);
  fs::remove_all(dir);
}

// Runs only when a LaPa-shaped tree is available locally.
TEST(Dataset, LapaSplitSizes) {
  const char* root = std::getenv("FACEPARSE_LAPA_ROOT");
  if (root == nullptr) GTEST_SKIP() << "FACEPARSE_LAPA_ROOT not set";
  const auto m = scan_dataset(root);
  EXPECT_EQ(m.split(Split::kTrain).size(), 19000u);
  EXPECT_EQ(m.split(Split::kVal).size(), 1000u);
  EXPECT_EQ(m.split(Split::kTest).size(), 2000u);
}

}  // namespace
}  // namespace faceparse
