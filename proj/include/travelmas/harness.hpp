// Copyright 2026 The travelmas Authors
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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "travelmas/evaluation.hpp"
#include "travelmas/orchestration.hpp"

namespace travelmas {

/// Bad invocation detected before any work starts (missing inputs, invalid
/// limits, unknown backend settings).
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct RunOptions {
  std::filesystem::path tasks;
  std::filesystem::path sandbox;
  std::filesystem::path out;            // traces go to out/runs/<experiment>/
  std::string experiment;               // defaults to the mode name
  std::filesystem::path cassette_dir;   // scripted: <dir>/<task_id>.jsonl
  std::optional<std::filesystem::path> record_dir;  // remote: record cassettes here
  std::optional<std::filesystem::path> prompts;     // template overrides
  RunConfig config;
  int workers = 4;

  std::function<void(const std::string&)> log;
  // Test hook, called at the start of every episode.
  std::function<void(const Goal&)> before_episode;
};

struct RunSummary {
  std::filesystem::path run_dir;
  std::size_t total = 0;
  std::size_t ran = 0;
  std::size_t skipped = 0;  // trace already present
  std::size_t delivered = 0;
  std::size_t crashed = 0;  // episode threw; an error trace was written
};

/// Runs every task without a trace yet. One task's failure never aborts the
/// batch; configuration problems throw ConfigError before any episode runs.
RunSummary cmd_run(const RunOptions& options);

inline constexpr std::string_view kEvalSchema = "travelmas.eval/1";

struct EvaluateOptions {
  std::filesystem::path traces;
  std::filesystem::path sandbox;
  std::filesystem::path tasks;
  std::filesystem::path out;  // JSON; .csv and .txt siblings are written next to it
  MetricOptions metrics;
};

struct EvaluationFile {
  std::string experiment;
  std::vector<std::string> modes;
  std::vector<std::string> config_digests;
  BenchmarkMetrics metrics;
  std::vector<AreaFailure> failures;
  HallucinationCounts hallucinations;
  RevisitStats revisits;
  std::vector<TaskEvaluation> tasks;

  nlohmann::json to_json() const;
  static EvaluationFile from_json(const nlohmann::json& j);
};

/// Plain-text table of the six metrics.
std::string metrics_table(const EvaluationFile& eval);
std::string metrics_csv(const EvaluationFile& eval);

/// Evaluates every *.trace under `traces` against the tasks and sandbox.
EvaluationFile cmd_evaluate(const EvaluateOptions& options);

EvaluationFile load_evaluation(const std::filesystem::path& path);

struct Report {
  std::string text;
  std::string csv;
};

/// "↓ 4.94" / "↑ 1.25" / "0.00" from values rounded to two decimals first.
std::string format_delta(double before, double after);

/// Side-by-side comparison, one column per evaluation, plus a delta column
/// (last minus first) when there are two or more.
Report build_report(const std::vector<EvaluationFile>& evals);

/// Loads the files, builds the report and, when `out_dir` is set, writes
/// report.txt and report.csv there.
Report cmd_report(const std::vector<std::filesystem::path>& files,
                  const std::optional<std::filesystem::path>& out_dir = std::nullopt);

/// Writes via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace travelmas
