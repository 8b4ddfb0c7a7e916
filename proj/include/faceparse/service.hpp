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

#include <atomic>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "faceparse/dataset.hpp"
#include "faceparse/part_schema.hpp"
#include "faceparse/pipeline.hpp"
#include "faceparse/session.hpp"

namespace httplib {
class Server;
}

namespace faceparse {

struct ServiceConfig {
  std::optional<std::filesystem::path> dataset_root;  // needed for sessions
  std::optional<std::filesystem::path> output_root;   // default: dataset root
  MaskSource masks;
  std::map<std::string, PartSchema> schemas;  // "default" is always present
  std::size_t max_undo = kDefaultMaxUndo;
};

struct HttpResult {
  int status = 200;
  std::string body;
};

// JSON-over-HTTP API under /v1; payloads are documented in docs/api.md.
// Each handler is callable directly, which is how the unit tests drive it.
class AnnotationService {
 public:
  explicit AnnotationService(ServiceConfig config);

  HttpResult fit(std::string_view body) const;
  HttpResult open_session(std::string_view body);
  HttpResult get_session(const std::string& id);
  HttpResult patch_points(const std::string& id, std::string_view body);
  HttpResult undo(const std::string& id, std::string_view body);
  HttpResult save(const std::string& id, std::string_view body);
  HttpResult next(const std::string& id, std::string_view body);

  void mount(httplib::Server& server);

  const DatasetManifest* manifest() const {
    return manifest_ ? &*manifest_ : nullptr;
  }

 private:
  const PartSchema* schema(const std::string& id) const;

  ServiceConfig config_;
  std::optional<DatasetManifest> manifest_;
  SessionStore sessions_;
};

// Blocks until stop_flag becomes true or the server fails. Returns 0 on a
// clean shutdown.
int run_server(AnnotationService& service, const std::string& host, int port,
               const std::atomic<bool>* stop_flag = nullptr);

}  // namespace faceparse
