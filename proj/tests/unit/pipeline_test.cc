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
#include <set>

#include "faceparse/boundary.hpp"
#include "faceparse/image_io.hpp"
#include "faceparse/npy.hpp"
#include "faceparse/pipeline.hpp"
#include "support/fixture.hpp"
#include "support/oracles.hpp"

namespace faceparse {
namespace {

namespace fs = std::filesystem;

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = testing::scratch_dir("pipeline"); }
  void TearDown() override { fs::remove_all(dir_); }

  AnnotateSummary run(const fs::path& out, bool masks, int workers = 0) {
    AnnotateOptions o;
    o.output_dir = out;
    if (masks) o.masks.dir = testing::fixture_dir() / "masks";
    o.workers = workers;
    return annotate_dataset(scan_dataset(testing::fixture_dir()), default_part_schema(), o);
  }

  fs::path dir_;
};

std::vector<std::uint8_t> bytes_of(const fs::path& p) { return read_file_bytes(p); }

TEST_F(PipelineTest, ReproducesGoldenFiles) {
  const auto s = run(dir_ / "out", true, 2);
  EXPECT_EQ(s.processed, 6);
  EXPECT_EQ(s.failed, 0);
  EXPECT_EQ(s.non_simple_contours, 0);
  for (const char* id : {"f000", "f001", "f002", "f003", "f004", "f005"}) {
    for (const char* kind : {"labels", "boundaries"}) {
      const auto name = std::string(id) + ".png";
      EXPECT_EQ(bytes_of(dir_ / "out" / kind / name), bytes_of(testing::golden_dir() / kind / name))
          << kind << "/" << name;
    }
  }
}

TEST_F(PipelineTest, RunsAreByteIdenticalAcrossWorkerCounts) {
  run(dir_ / "a", true, 1);
  run(dir_ / "b", true, 4);
  for (const auto& e : fs::recursive_directory_iterator(dir_ / "a")) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), dir_ / "a");
    EXPECT_EQ(bytes_of(e.path()), bytes_of(dir_ / "b" / rel)) << rel;
  }
}

TEST_F(PipelineTest, PartsOnlyOutputHasNoSkinOrHair) {
  const auto s = run(dir_ / "out", false);
  EXPECT_EQ(s.pixels_per_category[1], 0u);
  EXPECT_EQ(s.pixels_per_category[10], 0u);
  for (const auto& e : fs::directory_iterator(dir_ / "out" / "labels")) {
    const auto labels = read_label_map(e.path());
    std::set<int> seen;
    for (std::size_t i = 0; i < labels.size(); ++i) seen.insert(labels[i]);
    for (int v : seen) EXPECT_TRUE(v == 0 || (v >= 2 && v <= 9)) << v;
  }
}

TEST_F(PipelineTest, BoundaryFilesMatchExtraction) {
  run(dir_ / "out", true);
  const auto labels = read_label_map(dir_ / "out/labels/f003.png");
  const auto b = read_gray8(dir_ / "out/boundaries/f003.png");
  const auto expected = extract_boundary(labels);
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(b.pixels[i], expected[i] * 255);
}

TEST_F(PipelineTest, SampleFailuresAreCounted) {
  fs::copy(testing::fixture_dir(), dir_ / "ds", fs::copy_options::recursive);
  std::ofstream(dir_ / "ds/landmarks/f002.txt") << "106\n1 2\n";
  AnnotateOptions o;
  o.output_dir = dir_ / "out";
  const auto s = annotate_dataset(scan_dataset(dir_ / "ds"), default_part_schema(), o);
  EXPECT_EQ(s.processed, 5);
  EXPECT_EQ(s.failed, 1);
  ASSERT_EQ(s.failures.size(), 1u);
  EXPECT_EQ(s.failures[0].first, "f002");
  EXPECT_FALSE(fs::exists(dir_ / "out/labels/f002.png"));
}

TEST_F(PipelineTest, WorkerCountResolution) {
  EXPECT_EQ(resolve_worker_count(3), 3);
  ::setenv("FACEPARSE_WORKERS", "5", 1);
  EXPECT_EQ(resolve_worker_count(0), 5);
  ::unsetenv("FACEPARSE_WORKERS");
  EXPECT_GE(resolve_worker_count(0), 1);
}

TEST_F(PipelineTest, EvaluateGoldenAgainstItself) {
  const auto r = evaluate_directories(testing::golden_dir() / "labels",
                                      testing::golden_dir() / "labels");
  EXPECT_EQ(r.images, 6);
  EXPECT_TRUE(r.missing_predictions.empty());
  for (int c = 0; c < kNumCategories; ++c) EXPECT_EQ(r.scores.per_category[c].f1, 1.0) << c;
  EXPECT_EQ(r.scores.overall, 1.0);
}

TEST_F(PipelineTest, EvaluatePartsOnlyAgainstGolden) {
  run(dir_ / "parts", false);
  fs::remove(dir_ / "parts/labels/f001.png");
  const auto r = evaluate_directories(dir_ / "parts/labels", testing::golden_dir() / "labels");
  EXPECT_EQ(r.images, 5);
  EXPECT_EQ(r.missing_predictions, (std::vector<std::string>{"f001.png"}));
  EXPECT_EQ(r.scores.per_category[10].f1, 0.0);
  EXPECT_GT(r.scores.per_category[6].f1, 0.5);
}

TEST_F(PipelineTest, LossCheckMatchesInMemoryLosses) {
  testing::Rng rng(600);
  const auto labels = read_label_map(testing::golden_dir() / "labels/f000.png");
  const int w = labels.width(), h = labels.height();
  const auto sem = testing::random_prob_map(rng, w, h, 11);
  const auto fus = testing::random_prob_map(rng, w, h, 11);
  const auto bnd = testing::random_boundary_probs(rng, w, h);
  const std::vector<std::size_t> shape3{static_cast<std::size_t>(h), static_cast<std::size_t>(w), 11};
  write_npy(dir_ / "s.npy", {shape3, sem.values()});
  write_npy(dir_ / "f.npy", {shape3, fus.values()});
  write_npy(dir_ / "b.npy", {{static_cast<std::size_t>(h), static_cast<std::size_t>(w)}, bnd.values()});
  LossCheckInputs in;
  in.labels = testing::golden_dir() / "labels/f000.png";
  in.semantic = dir_ / "s.npy";
  in.boundary = dir_ / "b.npy";
  in.fusion = dir_ / "f.npy";
  const auto r = loss_check(in);
  const auto boundary = extract_boundary(labels);
  EXPECT_EQ(r.semantic, semantic_loss(sem, labels));
  EXPECT_EQ(r.boundary, boundary_loss(bnd, boundary, true));
  EXPECT_TRUE(r.boundary_balanced);
  EXPECT_EQ(r.fusion, fusion_loss(fus, labels, make_weight_map(boundary, 200.0)));
  EXPECT_EQ(r.total, r.semantic + r.boundary + 2.0 * r.fusion);

  write_npy(dir_ / "bad.npy", {{2, 2}, {0.5, 0.5, 0.5, 0.5}});
  in.boundary = dir_ / "bad.npy";
  EXPECT_THROW(loss_check(in), Error);
}

}  // namespace
}  // namespace faceparse
