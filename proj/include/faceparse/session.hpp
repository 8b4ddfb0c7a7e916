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

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "faceparse/landmarks.hpp"

namespace faceparse {

struct PointMove {
  int index = 0;
  Point to{};
};

// One PATCH worth of point moves, with the positions it replaced.
struct Edit {
  std::vector<int> indices;
  std::vector<Point> before;
  std::vector<Point> after;
};

inline constexpr std::size_t kDefaultMaxUndo = 100;

// Editing state of one sample. Not internally synchronized; SessionStore
// hands out sessions under a per-session lock.
class Session {
 public:
  Session(std::string id, std::string sample_id, LandmarkSet initial,
          std::size_t max_undo = kDefaultMaxUndo);

  const std::string& id() const { return id_; }
  const std::string& sample_id() const { return sample_id_; }
  const LandmarkSet& landmarks() const { return current_; }
  // State before the oldest edit still on the undo stack.
  const LandmarkSet& base() const { return base_; }
  std::uint64_t revision() const { return revision_; }
  std::size_t undo_depth() const { return history_.size(); }
  std::size_t max_undo() const { return max_undo_; }
  bool dirty() const { return current_ != saved_; }
  // Points touched since the sample was opened.
  const std::vector<bool>& edited() const { return edited_; }

  // Throws IndexOutOfRange / InvalidArgument; state unchanged on error.
  void apply(std::span<const PointMove> moves);
  // Returns false (and changes nothing) when the history is exhausted.
  bool undo();
  void mark_saved();
  void open(std::string sample_id, LandmarkSet initial);

  LandmarkSet replay() const;

 private:
  std::string id_;
  std::string sample_id_;
  std::size_t max_undo_;
  LandmarkSet base_;
  LandmarkSet current_;
  LandmarkSet saved_;
  std::deque<Edit> history_;
  std::vector<bool> edited_;
  std::uint64_t revision_ = 0;
};

class SessionStore {
 public:
  struct Handle {
    std::shared_ptr<void> owner;  // declared first: outlives the lock
    std::unique_lock<std::mutex> lock;
    Session* session = nullptr;
    explicit operator bool() const { return session != nullptr; }
    Session* operator->() const { return session; }
  };

  explicit SessionStore(std::size_t max_undo = kDefaultMaxUndo) : max_undo_(max_undo) {}

  std::string create(std::string sample_id, LandmarkSet initial);
  // Empty handle for unknown ids.
  Handle acquire(const std::string& id);

 private:
  struct Slot {
    std::mutex mutex;
    std::unique_ptr<Session> session;
  };

  std::size_t max_undo_;
  std::mutex mutex_;
  std::uint64_t next_id_ = 1;
  std::map<std::string, std::shared_ptr<Slot>> slots_;
};

}  // namespace faceparse
