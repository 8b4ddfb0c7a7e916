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

#include "faceparse/service.hpp"

#include <chrono>
#include <thread>

#include "faceparse/image_io.hpp"
#include "faceparse/rle.hpp"
#include "httplib.h"
#include "json.hpp"
#include "log.hpp"

namespace faceparse {
namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kMaxFrame = 16384;

HttpResult json_result(int status, const ojson& body) { return {status, body.dump()}; }

HttpResult error_result(int status, std::string_view code, const std::string& message) {
  ojson body;
  body["error"] = code;
  body["message"] = message;
  return json_result(status, body);
}

HttpResult error_result(int status, const Error& e) {
  return error_result(status, error_code_name(e.code()), e.what());
}

// Thrown for payloads that are not shaped like the API expects (400).
struct BadRequest {
  std::string message;
};

nlohmann::json parse_body(std::string_view body, bool allow_empty = false) {
  if (allow_empty && body.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    return nlohmann::json::object();
  }
  nlohmann::json doc = nlohmann::json::parse(body.begin(), body.end(), nullptr, false);
  if (doc.is_discarded()) throw BadRequest{"request body is not valid JSON"};
  if (!doc.is_object()) throw BadRequest{"request body must be a JSON object"};
  return doc;
}

int require_int(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_number_integer()) {
    throw BadRequest{std::string("'") + key + "' must be an integer"};
  }
  return doc.at(key).get<int>();
}

Point parse_point(const nlohmann::json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw BadRequest{"points must be [x, y] number pairs"};
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

ojson points_json(const LandmarkSet& landmarks) {
  ojson pts = ojson::array();
  for (const Point& p : landmarks.points()) pts.push_back({p.x, p.y});
  return pts;
}

ojson labels_json(const LabelMap& labels) {
  ojson rows = ojson::array();
  for (const RowRuns& runs : rle_encode_rows(labels)) {
    ojson row = ojson::array();
    for (const auto& [value, length] : runs) {
      row.push_back(value);
      row.push_back(length);
    }
    rows.push_back(std::move(row));
  }
  ojson out;
  out["encoding"] = "rle-rows";
  out["width"] = labels.width();
  out["height"] = labels.height();
  out["rows"] = std::move(rows);
  return out;
}

ojson contours_json(const FaceAnnotation& ann) {
  ojson contours = ojson::array();
  for (const FittedPart& part : ann.parts) {
    ojson entry;
    entry["category"] = category_name(part.category);
    entry["id"] = static_cast<int>(part.category);
    entry["simple"] = part.simple;
    ojson pts = ojson::array();
    for (const Point& p : part.contour.vertices) pts.push_back({p.x, p.y});
    entry["points"] = std::move(pts);
    contours.push_back(std::move(entry));
  }
  return contours;
}

ojson session_json(const Session& s) {
  ojson out;
  out["session_id"] = s.id();
  out["sample_id"] = s.sample_id();
  out["revision"] = s.revision();
  out["dirty"] = s.dirty();
  out["undo_depth"] = s.undo_depth();
  out["max_undo"] = s.max_undo();
  out["width"] = s.landmarks().image_width();
  out["height"] = s.landmarks().image_height();
  out["landmarks"] = points_json(s.landmarks());
  ojson visible = ojson::array();
  for (bool v : s.landmarks().visibility()) visible.push_back(v);
  out["visible"] = std::move(visible);
  ojson edited = ojson::array();
  for (int i = 0; i < kNumLandmarks; ++i) {
    if (s.edited()[static_cast<std::size_t>(i)]) edited.push_back(i);
  }
  out["edited"] = std::move(edited);
  return out;
}

// Optional revision echo on undo/save/next; PATCH requires it.
bool revision_conflict(const nlohmann::json& doc, const Session& s, bool required) {
  if (!doc.contains("revision")) {
    if (required) throw BadRequest{"'revision' is required"};
    return false;
  }
  if (!doc.at("revision").is_number_unsigned() && !doc.at("revision").is_number_integer()) {
    throw BadRequest{"'revision' must be an integer"};
  }
  return doc.at("revision").get<std::uint64_t>() != s.revision();
}

HttpResult conflict(const Session& s) {
  ojson body;
  body["error"] = "RevisionConflict";
  body["message"] = "session changed since the given revision";
  body["session"] = session_json(s);
  return json_result(409, body);
}

template <typename Fn>
HttpResult guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const BadRequest& e) {
    return error_result(400, "BadRequest", e.message);
  } catch (const Error& e) {
    const int status = e.code() == ErrorCode::kIo ? 500 : 422;
    return error_result(status, e);
  } catch (const std::exception& e) {
    return error_result(500, "Internal", e.what());
  }
}

}  // namespace

AnnotationService::AnnotationService(ServiceConfig config)
    : config_(std::move(config)), sessions_(config_.max_undo) {
  if (!config_.schemas.count("default")) {
    config_.schemas.emplace("default", default_part_schema());
  }
  if (config_.dataset_root) manifest_ = scan_dataset(*config_.dataset_root);
}

const PartSchema* AnnotationService::schema(const std::string& id) const {
  const auto it = config_.schemas.find(id);
  return it == config_.schemas.end() ? nullptr : &it->second;
}

HttpResult AnnotationService::fit(std::string_view body) const {
  return guarded([&] {
    const auto doc = parse_body(body);
    if (!doc.contains("landmarks") || !doc.at("landmarks").is_array()) {
      throw BadRequest{"'landmarks' must be an array of [x, y] pairs"};
    }
    const int width = require_int(doc, "width");
    const int height = require_int(doc, "height");
    const auto& raw = doc.at("landmarks");
    std::vector<Point> pts;
    for (const auto& v : raw) pts.push_back(parse_point(v));
    if (pts.size() != kNumLandmarks) {
      throw Error(ErrorCode::kCountMismatch, "expected " + std::to_string(kNumLandmarks) +
                                                 " landmarks, got " + std::to_string(pts.size()));
    }
    LandmarkSet::Visibility visible{};
    visible.fill(true);
    if (doc.contains("visible")) {
      const auto& vis = doc.at("visible");
      if (!vis.is_array() || vis.size() != kNumLandmarks) {
        throw Error(ErrorCode::kCountMismatch, "'visible' must hold one flag per landmark");
      }
      for (std::size_t i = 0; i < vis.size(); ++i) {
        if (!vis[i].is_boolean()) throw BadRequest{"'visible' entries must be booleans"};
        visible[i] = vis[i].get<bool>();
      }
    }
    if (width <= 0 || height <= 0 || width > kMaxFrame || height > kMaxFrame) {
      throw Error(ErrorCode::kInvalidArgument, "frame size must be within 1.." +
                                                   std::to_string(kMaxFrame));
    }
    std::string schema_id = "default";
    if (doc.contains("schema")) {
      if (!doc.at("schema").is_string()) throw BadRequest{"'schema' must be a string"};
      schema_id = doc.at("schema").get<std::string>();
    }
    const PartSchema* part_schema = schema(schema_id);
    if (part_schema == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "unknown schema '" + schema_id + "'");
    }
    LandmarkSet::Points points{};
    std::copy(pts.begin(), pts.end(), points.begin());
    const LandmarkSet landmarks(points, visible, width, height);
    const FaceAnnotation ann = annotate_face(landmarks, *part_schema, width, height);

    ojson out;
    out["schema"] = schema_id;
    out["width"] = width;
    out["height"] = height;
    out["labels"] = labels_json(ann.labels);
    out["contours"] = contours_json(ann);
    return json_result(200, out);
  });
}

HttpResult AnnotationService::open_session(std::string_view body) {
  return guarded([&] {
    if (!manifest_) {
      return error_result(404, "NoDataset", "service was started without a dataset root");
    }
    const auto doc = parse_body(body, true);
    std::string sample_id;
    if (doc.contains("sample_id")) {
      if (!doc.at("sample_id").is_string()) throw BadRequest{"'sample_id' must be a string"};
      sample_id = doc.at("sample_id").get<std::string>();
    } else {
      const auto ids = manifest_->ordered_ids();
      if (ids.empty()) return error_result(404, "EmptyDataset", "dataset has no samples");
      sample_id = ids.front();
    }
    if (!manifest_->contains(sample_id)) {
      return error_result(404, "UnknownSample", "no sample '" + sample_id + "'");
    }
    const SampleFiles& files = manifest_->sample(sample_id);
    const auto frame = sample_frame(files, config_.masks);
    const LandmarkSet initial = read_landmark_file(files.landmarks, frame.first, frame.second);
    const std::string id = sessions_.create(sample_id, initial);
    auto handle = sessions_.acquire(id);
    return json_result(201, session_json(*handle.session));
  });
}

HttpResult AnnotationService::get_session(const std::string& id) {
  return guarded([&] {
    auto handle = sessions_.acquire(id);
    if (!handle) return error_result(404, "UnknownSession", "no session '" + id + "'");
    return json_result(200, session_json(*handle.session));
  });
}

HttpResult AnnotationService::patch_points(const std::string& id, std::string_view body) {
  return guarded([&] {
    auto handle = sessions_.acquire(id);
    if (!handle) return error_result(404, "UnknownSession", "no session '" + id + "'");
    const auto doc = parse_body(body);
    if (revision_conflict(doc, *handle.session, true)) return conflict(*handle.session);
    if (!doc.contains("moves") || !doc.at("moves").is_array()) {
      throw BadRequest{"'moves' must be an array"};
    }
    std::vector<PointMove> moves;
    for (const auto& m : doc.at("moves")) {
      if (!m.is_object()) throw BadRequest{"each move must be an object"};
      PointMove move;
      move.index = require_int(m, "index");
      if (m.contains("x") && m.contains("y") && m.at("x").is_number() && m.at("y").is_number()) {
        move.to = {m.at("x").get<double>(), m.at("y").get<double>()};
      } else if (m.contains("dx") && m.contains("dy") && m.at("dx").is_number() &&
                 m.at("dy").is_number()) {
        if (move.index < 0 || move.index >= kNumLandmarks) {
          throw Error(ErrorCode::kIndexOutOfRange,
                      "landmark index " + std::to_string(move.index) + " out of range");
        }
        const Point from = handle->landmarks().point(move.index);
        move.to = {from.x + m.at("dx").get<double>(), from.y + m.at("dy").get<double>()};
      } else {
        throw BadRequest{"a move needs numeric x/y or dx/dy"};
      }
      moves.push_back(move);
    }
    handle->apply(moves);
    return json_result(200, session_json(*handle.session));
  });
}

HttpResult AnnotationService::undo(const std::string& id, std::string_view body) {
  return guarded([&] {
    auto handle = sessions_.acquire(id);
    if (!handle) return error_result(404, "UnknownSession", "no session '" + id + "'");
    const auto doc = parse_body(body, true);
    if (revision_conflict(doc, *handle.session, false)) return conflict(*handle.session);
    const bool undone = handle->undo();
    ojson out = session_json(*handle.session);
    out["undone"] = undone;
    out["history_exhausted"] = handle->undo_depth() == 0;
    return json_result(200, out);
  });
}

HttpResult AnnotationService::save(const std::string& id, std::string_view body) {
  return guarded([&] {
    auto handle = sessions_.acquire(id);
    if (!handle) return error_result(404, "UnknownSession", "no session '" + id + "'");
    const auto doc = parse_body(body, true);
    if (revision_conflict(doc, *handle.session, false)) return conflict(*handle.session);
    const bool written = handle->dirty();
    const fs::path out_root = config_.output_root ? *config_.output_root : manifest_->root();
    const fs::path landmark_path = out_root / "landmarks" / (handle->sample_id() + ".txt");
    const fs::path label_path = out_root / "labels" / (handle->sample_id() + ".png");
    if (written) {
      const SampleFiles& files = manifest_->sample(handle->sample_id());
      const FaceAnnotation ann =
          annotate_sample(files, handle->landmarks(), *schema("default"), config_.masks);
      write_landmark_file(landmark_path, handle->landmarks());
      write_label_map(label_path, ann.labels);
      handle->mark_saved();
    }
    ojson out = session_json(*handle.session);
    out["written"] = written;
    out["landmarks_path"] = landmark_path.string();
    out["labels_path"] = label_path.string();
    return json_result(200, out);
  });
}

HttpResult AnnotationService::next(const std::string& id, std::string_view body) {
  std::string sample_id;
  {
    auto handle = sessions_.acquire(id);
    if (!handle) return error_result(404, "UnknownSession", "no session '" + id + "'");
    sample_id = handle->sample_id();
  }
  const auto next_id = manifest_->next_after(sample_id);
  if (!next_id) {
    return guarded([&] {
      auto handle = sessions_.acquire(id);
      const auto doc = parse_body(body, true);
      if (revision_conflict(doc, *handle.session, false)) return conflict(*handle.session);
      ojson out = session_json(*handle.session);
      out["end_of_manifest"] = true;
      return json_result(200, out);
    });
  }
  HttpResult saved = save(id, body);
  if (saved.status != 200) return saved;
  return guarded([&] {
    auto handle = sessions_.acquire(id);
    if (!handle) return error_result(404, "UnknownSession", "no session '" + id + "'");
    const SampleFiles& files = manifest_->sample(*next_id);
    const auto frame = sample_frame(files, config_.masks);
    handle->open(*next_id, read_landmark_file(files.landmarks, frame.first, frame.second));
    ojson out = session_json(*handle.session);
    out["end_of_manifest"] = false;
    return json_result(200, out);
  });
}

void AnnotationService::mount(httplib::Server& server) {
  const auto reply = [](httplib::Response& res, const HttpResult& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Get("/v1/health", [reply](const httplib::Request&, httplib::Response& res) {
    reply(res, {200, R"({"status":"ok"})"});
  });
  server.Get("/v1/schemas", [this, reply](const httplib::Request&, httplib::Response& res) {
    ojson ids = ojson::array();
    for (const auto& [id, s] : config_.schemas) ids.push_back(id);
    reply(res, json_result(200, ojson{{"schemas", ids}}));
  });
  server.Post("/v1/fit", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, fit(req.body));
  });
  server.Post("/v1/sessions", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, open_session(req.body));
  });
  server.Get(R"(/v1/sessions/([^/]+))",
             [this, reply](const httplib::Request& req, httplib::Response& res) {
               reply(res, get_session(req.matches[1]));
             });
  server.Patch(R"(/v1/sessions/([^/]+)/points)",
               [this, reply](const httplib::Request& req, httplib::Response& res) {
                 reply(res, patch_points(req.matches[1], req.body));
               });
  server.Post(R"(/v1/sessions/([^/]+)/undo)",
              [this, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, undo(req.matches[1], req.body));
              });
  server.Post(R"(/v1/sessions/([^/]+)/save)",
              [this, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, save(req.matches[1], req.body));
              });
  server.Post(R"(/v1/sessions/([^/]+)/next)",
              [this, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, next(req.matches[1], req.body));
              });
}

int run_server(AnnotationService& service, const std::string& host, int port,
               const std::atomic<bool>* stop_flag) {
  httplib::Server server;
  service.mount(server);
  std::thread watcher;
  std::atomic<bool> done{false};
  if (stop_flag != nullptr) {
    watcher = std::thread([&] {
      while (!done.load() && !stop_flag->load()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
      }
      server.stop();
    });
  }
  log_info("listening on " + host + ":" + std::to_string(port));
  const bool ok = server.listen(host, port);
  done = true;
  if (watcher.joinable()) watcher.join();
  if (!ok && (stop_flag == nullptr || !stop_flag->load())) {
    log_error("cannot listen on " + host + ":" + std::to_string(port));
    return 1;
  }
  return 0;
}

}  // namespace faceparse
