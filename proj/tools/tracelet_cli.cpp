// Copyright 2026 The Tracelet Authors
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

// tracelet: inspect measurement outputs and fit instrumentation overhead.
//
//   tracelet dump <dir>
//   tracelet report <profile.json> [--sort=inclusive|exclusive|visits] [--json]
//   tracelet fit <samples.csv> [--group label,case] [--json] [--out FILE]
//   tracelet compare <fitA.json> <fitB.json> [--json]
//
// Exit codes: 0 success, 1 I/O or other failure, 2 parse or usage error,
// 3 insufficient data.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "tracelet/tracelet.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitInsufficient = 3;

int exit_code_for(int32_t rc) {
  switch (rc) {
    case TL_OK: return 0;
    case TL_E_PARSE:
    case TL_E_INVALID_ARGUMENT: return kExitParse;
    case TL_E_INSUFFICIENT_DATA: return kExitInsufficient;
    default: return kExitFailure;
  }
}

int report_failure(int32_t rc) {
  std::cerr << "tracelet: " << tl_error_name(rc) << ": " << tl_last_error() << '\n';
  return exit_code_for(rc);
}

struct CString {
  char* text = nullptr;
  ~CString() { tl_string_free(text); }
};

struct SamplesDeleter {
  void operator()(tl_samples* s) const { tl_samples_free(s); }
};

struct NamedModel {
  std::string instrumenter;
  std::string case_label;
  tl_overhead_model model{};
};

nlohmann::ordered_json model_json(const NamedModel& m) {
  nlohmann::ordered_json j;
  j["instrumenter"] = m.instrumenter;
  j["case"] = m.case_label;
  j["alpha_s"] = m.model.alpha_s;
  j["beta_s"] = m.model.beta_s;
  return j;
}

int run_dump(const std::string& dir) {
  CString out;
  if (auto rc = tl_dump_trace(dir.c_str(), &out.text); rc != TL_OK) return report_failure(rc);
  std::cout << out.text;
  return 0;
}

int run_report(const std::string& file, const std::string& sort, bool as_json) {
  int32_t key = TL_SORT_INCLUSIVE;
  if (sort == "exclusive") {
    key = TL_SORT_EXCLUSIVE;
  } else if (sort == "visits") {
    key = TL_SORT_VISITS;
  }
  CString out;
  if (auto rc = tl_report_profile(file.c_str(), key, as_json ? 1 : 0, &out.text); rc != TL_OK) {
    return report_failure(rc);
  }
  std::cout << out.text;
  return 0;
}

int run_fit(const std::string& csv, const std::vector<std::string>& group, bool as_json,
            const std::string& out_path) {
  tl_samples* raw = nullptr;
  if (auto rc = tl_samples_load(csv.c_str(), &raw); rc != TL_OK) return report_failure(rc);
  std::unique_ptr<tl_samples, SamplesDeleter> samples(raw);

  std::vector<std::pair<std::string, std::string>> selected;
  if (!group.empty()) {
    selected.emplace_back(group.at(0), group.at(1));
  } else {
    for (size_t i = 0; i < tl_samples_group_count(samples.get()); ++i) {
      const char* label = nullptr;
      const char* case_label = nullptr;
      tl_samples_group(samples.get(), i, &label, &case_label);
      selected.emplace_back(label, case_label);
    }
  }
  if (selected.empty()) {
    std::cerr << "tracelet: " << csv << " contains no samples\n";
    return kExitInsufficient;
  }

  std::vector<NamedModel> models;
  for (const auto& [label, case_label] : selected) {
    NamedModel m{label, case_label, {}};
    if (auto rc = tl_fit_overhead(samples.get(), label.c_str(), case_label.c_str(), &m.model);
        rc != TL_OK) {
      return report_failure(rc);
    }
    models.push_back(std::move(m));
  }

  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& m : models) doc.push_back(model_json(m));

  if (as_json) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << fmt::format("{:<16} {:<16} {}\n", "instrumenter", "case", "alpha & beta");
    for (const auto& m : models) {
      CString row;
      tl_format_model(&m.model, &row.text);
      std::cout << fmt::format("{:<16} {:<16} {}\n", m.instrumenter, m.case_label, row.text);
    }
  }

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::trunc);
    out << (models.size() == 1 ? model_json(models.front()).dump(2) : doc.dump(2)) << '\n';
    if (!out) {
      std::cerr << "tracelet: cannot write " << out_path << '\n';
      return kExitFailure;
    }
  }
  return 0;
}

// Reads a model written by "fit --out": one object, or an array holding one.
std::optional<NamedModel> load_model(const std::string& path, int& exit_code) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "tracelet: cannot open " << path << '\n';
    exit_code = kExitFailure;
    return std::nullopt;
  }
  auto doc = nlohmann::json::parse(in, nullptr, false);
  if (!doc.is_discarded() && doc.is_array() && doc.size() == 1) doc = doc.front();
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("alpha_s") ||
      !doc.contains("beta_s") || !doc["alpha_s"].is_number() || !doc["beta_s"].is_number()) {
    std::cerr << "tracelet: " << path
              << ": expected one model object with numeric alpha_s and beta_s\n";
    exit_code = kExitParse;
    return std::nullopt;
  }
  NamedModel m;
  m.instrumenter = doc.value("instrumenter", std::string());
  m.case_label = doc.value("case", std::string());
  m.model = {doc["alpha_s"].get<double>(), doc["beta_s"].get<double>()};
  return m;
}

int run_compare(const std::string& path_a, const std::string& path_b, bool as_json) {
  int exit_code = 0;
  const auto a = load_model(path_a, exit_code);
  if (!a) return exit_code;
  const auto b = load_model(path_b, exit_code);
  if (!b) return exit_code;

  tl_overhead_delta delta{};
  if (auto rc = tl_compare_overheads(&a->model, &b->model, &delta); rc != TL_OK) {
    return report_failure(rc);
  }
  if (as_json) {
    nlohmann::ordered_json j;
    j["a"] = model_json(*a);
    j["b"] = model_json(*b);
    j["delta_alpha_ps"] = delta.alpha_ps;
    j["delta_beta_ps"] = delta.beta_ps;
    j["delta_alpha_s"] = static_cast<double>(delta.alpha_ps) * 1e-12;
    j["delta_beta_s"] = static_cast<double>(delta.beta_ps) * 1e-12;
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  CString text;
  tl_format_delta(&delta, &text.text);
  std::cout << fmt::format("a: {} {}\nb: {} {}\na - b: {}\n", a->instrumenter, a->case_label,
                           b->instrumenter, b->case_label, text.text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tracelet trace/profile inspection and overhead analysis"};
  app.require_subcommand(1);

  std::string dump_dir;
  auto* dump = app.add_subcommand("dump", "List a trace archive chronologically per location");
  dump->add_option("dir", dump_dir, "Archive directory")->required();

  std::string profile_file;
  std::string sort_key = "inclusive";
  bool report_json = false;
  auto* report = app.add_subcommand("report", "Flat call-path table of a profile");
  report->add_option("profile", profile_file, "profile.json")->required();
  report->add_option("--sort", sort_key, "Sort key")
      ->check(CLI::IsMember({"inclusive", "exclusive", "visits"}));
  report->add_flag("--json", report_json, "Emit JSON rows");

  std::string samples_file;
  std::vector<std::string> group;
  bool fit_json = false;
  std::string fit_out;
  auto* fit = app.add_subcommand("fit", "Fit t = alpha + beta*N to benchmark medians");
  fit->add_option("samples", samples_file, "Samples CSV")->required();
  fit->add_option("--group", group, "instrumenter,case")->delimiter(',')->expected(2);
  fit->add_flag("--json", fit_json, "Emit JSON models");
  fit->add_option("--out", fit_out, "Also write the fitted model(s) as JSON");

  std::string fit_a;
  std::string fit_b;
  bool compare_json = false;
  auto* compare = app.add_subcommand("compare", "Difference of two fitted models (a - b)");
  compare->add_option("fitA", fit_a, "Model JSON")->required();
  compare->add_option("fitB", fit_b, "Model JSON")->required();
  compare->add_flag("--json", compare_json, "Emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  if (*dump) return run_dump(dump_dir);
  if (*report) return run_report(profile_file, sort_key, report_json);
  if (*fit) return run_fit(samples_file, group, fit_json, fit_out);
  return run_compare(fit_a, fit_b, compare_json);
}
