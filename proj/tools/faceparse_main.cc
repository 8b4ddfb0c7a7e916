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

// faceparse command-line tool. Links against the C interface only.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "faceparse/faceparse.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

int report_error(fp_status status) {
  std::cerr << "faceparse: " << fp_status_name(status) << ": " << fp_last_error_message()
            << "\n";
  return kExitFailure;
}

// Takes ownership of a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  fp_string_free(s);
  return out;
}

bool write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "faceparse: cannot write " << path << "\n";
    return false;
  }
  return true;
}

void handle_stop(int) { fp_serve_request_stop(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Landmark-driven face parsing annotation tools"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fp_version());
  app.footer(
      "Environment:\n"
      "  FACEPARSE_WORKERS  worker threads when --workers is 0\n"
      "  FACEPARSE_LOG      off | error | warning | info | debug (default warning)\n"
      "Exit codes: 0 success, 1 failure or partial failure, 2 usage error");

  // annotate
  std::string an_dataset, an_out, an_masks, an_schema, an_summary;
  int an_workers = 0;
  bool an_no_boundaries = false;
  auto* annotate = app.add_subcommand("annotate", "Fit, rasterize and fuse every sample");
  annotate->add_option("-d,--dataset", an_dataset, "Dataset root")->required()->check(
      CLI::ExistingDirectory);
  annotate->add_option("-o,--out", an_out, "Output root (default: dataset root)");
  annotate->add_option("-m,--masks", an_masks,
                       "Mask directory with skin/ and hair/ subdirectories, or 'none'")
      ->default_str("none");
  annotate->add_option("-s,--schema", an_schema, "Part schema JSON (default: built-in)")
      ->check(CLI::ExistingFile);
  annotate->add_option("-j,--workers", an_workers, "Worker threads, 0 = auto")
      ->default_val(0)
      ->check(CLI::NonNegativeNumber);
  annotate->add_flag("--no-boundaries", an_no_boundaries, "Skip boundary maps");
  annotate->add_option("--summary-json", an_summary, "Also write the summary here");

  // eval
  std::string ev_pred, ev_gt, ev_json;
  bool ev_macro = false;
  auto* eval = app.add_subcommand("eval", "Score predicted label maps against ground truth");
  eval->add_option("-p,--pred", ev_pred, "Prediction directory")->required()->check(
      CLI::ExistingDirectory);
  eval->add_option("-g,--gt", ev_gt, "Ground-truth directory")->required()->check(
      CLI::ExistingDirectory);
  eval->add_option("--json", ev_json, "Write the machine-readable report here");
  eval->add_flag("--macro-overall", ev_macro, "Macro-average the overall score");

  // boundary
  std::string bd_labels, bd_out;
  auto* boundary = app.add_subcommand("boundary", "Write the boundary map of a label map");
  boundary->add_option("labels", bd_labels, "Label-map PNG")->required()->check(
      CLI::ExistingFile);
  boundary->add_option("output", bd_out, "Boundary PNG (0/255)")->required();

  // loss-check
  std::string lc_labels, lc_sem, lc_bnd, lc_fus;
  double lc_alpha = 200.0;
  std::vector<double> lc_lambda{1.0, 1.0, 2.0};
  bool lc_no_balance = false;
  auto* loss = app.add_subcommand("loss-check", "Evaluate the training losses on files");
  loss->add_option("--labels", lc_labels, "Label-map PNG")->required()->check(
      CLI::ExistingFile);
  loss->add_option("--semantic", lc_sem, "Semantic probabilities, .npy H x W x 11")
      ->required()
      ->check(CLI::ExistingFile);
  loss->add_option("--boundary", lc_bnd, "Boundary probabilities, .npy H x W")
      ->required()
      ->check(CLI::ExistingFile);
  loss->add_option("--fusion", lc_fus, "Fused probabilities, .npy H x W x 11")
      ->required()
      ->check(CLI::ExistingFile);
  loss->add_option("--alpha", lc_alpha, "Boundary weight")->default_val(200.0)->check(
      CLI::NonNegativeNumber);
  loss->add_option("--lambda", lc_lambda, "Loss weights: semantic boundary fusion")
      ->expected(3)
      ->default_str("1 1 2");
  loss->add_flag("--no-balance", lc_no_balance, "Disable class balancing of the boundary loss");

  // serve
  std::string sv_host = "127.0.0.1", sv_dataset, sv_out, sv_masks, sv_schema;
  int sv_port = 8080;
  int sv_max_undo = 100;
  auto* serve = app.add_subcommand("serve", "Run the HTTP annotation service");
  serve->add_option("--host", sv_host, "Bind address")->default_val("127.0.0.1");
  serve->add_option("--port", sv_port, "Port")->default_val(8080)->check(CLI::Range(1, 65535));
  serve->add_option("-d,--dataset", sv_dataset, "Dataset root for sessions")->check(
      CLI::ExistingDirectory);
  serve->add_option("-o,--out", sv_out, "Where saves go (default: dataset root)");
  serve->add_option("-m,--masks", sv_masks, "Mask directory, or 'none'")->default_str("none");
  serve->add_option("-s,--schema", sv_schema, "Part schema JSON")->check(CLI::ExistingFile);
  serve->add_option("--max-undo", sv_max_undo, "Undo depth per session")
      ->default_val(100)
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (an_masks == "none") an_masks.clear();
  if (sv_masks == "none") sv_masks.clear();

  if (*annotate) {
    fp_annotate_options o{};
    o.dataset_root = an_dataset.c_str();
    o.output_dir = opt(an_out);
    o.masks_dir = opt(an_masks);
    o.schema_path = opt(an_schema);
    o.workers = an_workers;
    o.skip_boundaries = an_no_boundaries ? 1 : 0;
    int failed = 0;
    char* summary = nullptr;
    const fp_status st = fp_annotate_dataset(&o, &failed, &summary);
    if (st != FP_OK) return report_error(st);
    const std::string text = take(summary);
    std::cout << text << "\n";
    if (!an_summary.empty() && !write_text(an_summary, text + "\n")) return kExitFailure;
    return failed > 0 ? kExitFailure : kExitOk;
  }

  if (*eval) {
    char* json = nullptr;
    char* table = nullptr;
    const fp_status st = fp_evaluate(ev_pred.c_str(), ev_gt.c_str(), ev_macro ? 1 : 0, &json,
                                     &table);
    if (st != FP_OK) return report_error(st);
    const std::string report = take(json);
    std::cout << take(table);
    if (!ev_json.empty() && !write_text(ev_json, report + "\n")) return kExitFailure;
    return kExitOk;
  }

  if (*boundary) {
    const fp_status st = fp_boundary_file(bd_labels.c_str(), bd_out.c_str());
    return st == FP_OK ? kExitOk : report_error(st);
  }

  if (*loss) {
    fp_loss_check_options o{};
    o.labels_path = lc_labels.c_str();
    o.semantic_path = lc_sem.c_str();
    o.boundary_path = lc_bnd.c_str();
    o.fusion_path = lc_fus.c_str();
    o.alpha = lc_alpha;
    for (int i = 0; i < 3; ++i) o.lambda[i] = lc_lambda[static_cast<std::size_t>(i)];
    o.no_balance = lc_no_balance ? 1 : 0;
    char* json = nullptr;
    const fp_status st = fp_loss_check(&o, &json);
    if (st != FP_OK) return report_error(st);
    std::cout << take(json) << "\n";
    return kExitOk;
  }

  if (*serve) {
    fp_serve_options o{};
    o.host = sv_host.c_str();
    o.port = sv_port;
    o.dataset_root = opt(sv_dataset);
    o.output_dir = opt(sv_out);
    o.masks_dir = opt(sv_masks);
    o.schema_path = opt(sv_schema);
    o.max_undo = sv_max_undo;
    std::signal(SIGINT, handle_stop);
    std::signal(SIGTERM, handle_stop);
    const fp_status st = fp_serve(&o);
    return st == FP_OK ? kExitOk : report_error(st);
  }
  return kExitUsage;
}
