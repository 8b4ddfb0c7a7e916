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

#include "faceparse/session.hpp"

#include <cmath>
#include <set>

namespace faceparse {

Session::Session(std::string id, std::string sample_id, LandmarkSet initial,
                 std::size_t max_undo)
    : id_(std::move(id)), max_undo_(max_undo) {
  open(std::move(sample_id), std::move(initial));
}

void Session::open(std::string sample_id, LandmarkSet initial) {
  sample_id_ = std::move(sample_id);
  base_ = initial;
  current_ = initial;
  saved_ = std::move(initial);
  history_.clear();
  edited_.assign(kNumLandmarks, false);
  ++revision_;
}

void Session::apply(std::span<const PointMove> moves) {
  if (moves.empty()) throw Error(ErrorCode::kInvalidArgument, "edit moves no points");
  std::set<int> seen;
  for (const auto& m : moves) {
    if (m.index < 0 || m.index >= kNumLandmarks) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "landmark index " + std::to_string(m.index) + " out of range");
    }
    if (!seen.insert(m.index).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "landmark " + std::to_string(m.index) + " moved twice in one edit");
    }
    if (!std::isfinite(m.to.x) || !std::isfinite(m.to.y) ||
        std::fabs(m.to.x) >= kMaxCoordinate || std::fabs(m.to.y) >= kMaxCoordinate) {
      throw Error(ErrorCode::kInvalidArgument, "target position is not finite or out of range");
    }
  }
  Edit edit;
  LandmarkSet next = current_;
  for (const auto& m : moves) {
    edit.indices.push_back(m.index);
    edit.before.push_back(current_.point(m.index));
    edit.after.push_back(m.to);
    next = next.with_point(m.index, m.to);
  }
  current_ = std::move(next);
  for (int i : edit.indices) edited_[static_cast<std::size_t>(i)] = true;
  history_.push_back(std::move(edit));
  if (history_.size() > max_undo_) {
    // The evicted edit becomes part of the base state.
    const Edit& oldest = history_.front();
    for (std::size_t k = 0; k < oldest.indices.size(); ++k) {
      base_ = base_.with_point(oldest.indices[k], oldest.after[k]);
    }
    history_.pop_front();
  }
  ++revision_;
}

bool Session::undo() {
  if (history_.empty()) return false;
  const Edit& last = history_.back();
  LandmarkSet prev = current_;
  for (std::size_t k = last.indices.size(); k-- > 0;) {
    prev = prev.with_point(last.indices[k], last.before[k]);
  }
  current_ = std::move(prev);
  history_.pop_back();
  ++revision_;
  return true;
}

void Session::mark_saved() {
  saved_ = current_;
  ++revision_;
}

LandmarkSet Session::replay() const {
  LandmarkSet state = base_;
  for (const Edit& e : history_) {
    for (std::size_t k = 0; k < e.indices.size(); ++k) {
      state = state.with_point(e.indices[k], e.after[k]);
    }
  }
  return state;
}

std::string SessionStore::create(std::string sample_id, LandmarkSet initial) {
  std::lock_guard<std::mutex> lock(mutex_);
  const std::string id = "s" + std::to_string(next_id_++);
  auto slot = std::make_shared<Slot>();
  slot->session = std::make_unique<Session>(id, std::move(sample_id), std::move(initial),
                                            max_undo_);
  slots_.emplace(id, std::move(slot));
  return id;
}

SessionStore::Handle SessionStore::acquire(const std::string& id) {
  std::shared_ptr<Slot> slot;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto it = slots_.find(id);
    if (it == slots_.end()) return {};
    slot = it->second;
  }
  Handle h;
  h.lock = std::unique_lock<std::mutex>(slot->mutex);
  h.session = slot->session.get();
  h.owner = std::move(slot);
  return h;
}

}  // namespace faceparse
