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

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "faceparse/session.hpp"
#include "support/fixture.hpp"
#include "support/oracles.hpp"

namespace faceparse {
namespace {

Session open_f000(std::size_t max_undo = kDefaultMaxUndo) {
  return Session("s", "f000", testing::fixture_landmarks("f000"), max_undo);
}

void move_one(Session& s, int index, Point to) {
  const PointMove m{index, to};
  s.apply(std::span<const PointMove>(&m, 1));
}

TEST(SessionTest, FreshSessionIsClean) {
  const auto s = open_f000();
  EXPECT_EQ(s.revision(), 1u);
  EXPECT_FALSE(s.dirty());
  EXPECT_EQ(s.undo_depth(), 0u);
  EXPECT_EQ(s.max_undo(), kDefaultMaxUndo);
  EXPECT_EQ(s.sample_id(), "f000");
}

TEST(SessionTest, MoveThenUndoRestoresExactly) {
  auto s = open_f000();
  const auto original = s.landmarks();
  const Point p0 = original.point(0);
  move_one(s, 0, {p0.x + 5.0, p0.y - 3.0});
  EXPECT_EQ(s.landmarks().point(0).x, p0.x + 5.0);
  EXPECT_EQ(s.landmarks().point(0).y, p0.y - 3.0);
  EXPECT_TRUE(s.dirty());
  EXPECT_TRUE(s.edited()[0]);
  EXPECT_TRUE(s.undo());
  EXPECT_EQ(s.landmarks(), original);
  EXPECT_FALSE(s.dirty());
  EXPECT_FALSE(s.undo());
}

TEST(SessionTest, HistoryIsBoundedAndOldestEditSticks) {
  auto s = open_f000(100);
  const auto original = s.landmarks();
  for (int k = 0; k < 101; ++k) {
    const int idx = k % kNumLandmarks;
    const Point p = s.landmarks().point(idx);
    move_one(s, idx, {p.x + 1.0, p.y});
  }
  EXPECT_EQ(s.undo_depth(), 100u);
  int undone = 0;
  for (int k = 0; k < 101; ++k) undone += s.undo() ? 1 : 0;
  EXPECT_EQ(undone, 100);
  EXPECT_EQ(s.undo_depth(), 0u);
  EXPECT_EQ(s.landmarks().point(0).x, original.point(0).x + 1.0);
  for (int i = 1; i < kNumLandmarks; ++i) EXPECT_EQ(s.landmarks().point(i), original.point(i));
  EXPECT_EQ(s.landmarks(), s.base());
}

TEST(SessionTest, ReplayMatchesCurrentState) {
  testing::Rng rng(31);
  auto s = open_f000(20);
  for (int step = 0; step < 300; ++step) {
    if (testing::uniform(rng, 0, 1) < 0.3) {
      s.undo();
    } else {
      std::vector<PointMove> moves;
      const int n = testing::uniform_int(rng, 1, 4);
      std::vector<int> used;
      for (int k = 0; k < n; ++k) {
        const int idx = testing::uniform_int(rng, 0, kNumLandmarks - 1);
        if (std::find(used.begin(), used.end(), idx) != used.end()) continue;
        used.push_back(idx);
        moves.push_back({idx, {testing::uniform(rng, 0, 128), testing::uniform(rng, 0, 128)}});
      }
      s.apply(moves);
    }
    ASSERT_EQ(s.replay(), s.landmarks()) << "step " << step;
    ASSERT_LE(s.undo_depth(), 20u);
  }
}

TEST(SessionTest, InvalidEditsLeaveStateUnchanged) {
  auto s = open_f000();
  const auto before = s.landmarks();
  const auto rev = s.revision();
  const std::vector<PointMove> out_of_range{{106, {1, 1}}};
  const std::vector<PointMove> twice{{3, {1, 1}}, {3, {2, 2}}};
  const std::vector<PointMove> nan{{3, {std::nan(""), 1}}};
  try {
    s.apply(out_of_range);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIndexOutOfRange);
  }
  EXPECT_THROW(s.apply(twice), Error);
  EXPECT_THROW(s.apply(nan), Error);
  EXPECT_THROW(s.apply({}), Error);
  EXPECT_EQ(s.landmarks(), before);
  EXPECT_EQ(s.revision(), rev);
  EXPECT_EQ(s.undo_depth(), 0u);
}

TEST(SessionTest, RevisionAdvancesOnEveryChange) {
  auto s = open_f000();
  auto rev = s.revision();
  move_one(s, 10, {1, 2});
  EXPECT_EQ(s.revision(), ++rev);
  s.mark_saved();
  EXPECT_EQ(s.revision(), ++rev);
  EXPECT_FALSE(s.dirty());
  s.undo();
  EXPECT_EQ(s.revision(), ++rev);
  EXPECT_TRUE(s.dirty());
  s.open("f001", testing::fixture_landmarks("f001"));
  EXPECT_EQ(s.revision(), ++rev);
  EXPECT_EQ(s.sample_id(), "f001");
  EXPECT_EQ(s.undo_depth(), 0u);
  EXPECT_FALSE(s.dirty());
}

TEST(SessionStoreTest, CreateAndAcquire) {
  SessionStore store(7);
  const auto a = store.create("f000", testing::fixture_landmarks("f000"));
  const auto b = store.create("f001", testing::fixture_landmarks("f001"));
  EXPECT_NE(a, b);
  EXPECT_FALSE(store.acquire("nope"));
  {
    auto h = store.acquire(a);
    ASSERT_TRUE(h);
    EXPECT_EQ(h->sample_id(), "f000");
    EXPECT_EQ(h->max_undo(), 7u);
  }
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&store, &b] {
      for (int k = 0; k < 50; ++k) {
        auto h = store.acquire(b);
        const Point p = h->landmarks().point(0);
        const PointMove m{0, {p.x + 1.0, p.y}};
        h->apply(std::span<const PointMove>(&m, 1));
      }
    });
  }
  for (auto& t : threads) t.join();
  auto h = store.acquire(b);
  EXPECT_EQ(h->revision(), 401u);
  EXPECT_NEAR(h->landmarks().point(0).x, testing::fixture_landmarks("f001").point(0).x + 400.0,
              1e-9);
}

}  // namespace
}  // namespace faceparse
