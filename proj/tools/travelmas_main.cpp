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

// travelmas: run multi-agent travel-planning episodes, evaluate the traces,
// and compare experiments.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "travelmas/common.hpp"
#include "travelmas/harness.hpp"

namespace fs = std::filesystem;
using namespace travelmas;

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent travel planning harness"};
  app.require_subcommand(1);

  // run
  RunOptions run;
  std::string mode = "fixed", backend = "scripted";
  int workers = 4;
  std::string endpoint, model, api_key_env, record_dir, prompts_dir;
  double rpm = 0;
  auto* run_cmd = app.add_subcommand("run", "Run every task in a task file");
  run_cmd->add_option("--tasks", run.tasks, "Task file (JSONL)")->required();
  run_cmd->add_option("--sandbox", run.sandbox, "Sandbox directory with the four CSV tables")->required();
  run_cmd->add_option("--mode", mode, "fixed | orchestrated | single")
      ->check(CLI::IsMember({"fixed", "orchestrated", "single", "single_agent"}));
  run_cmd->add_option("--backend", backend, "scripted | remote")->check(CLI::IsMember({"scripted", "remote"}));
  run_cmd->add_option("--cassette-dir", run.cassette_dir, "Scripted backend: <dir>/<task_id>.jsonl");
  run_cmd->add_option("--max-steps", run.config.max_steps, "Public message limit per episode")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--max-critic-rounds", run.config.max_critic_rounds)->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--max-tool-rounds", run.config.max_tool_rounds_per_turn)->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--out", run.out, "Output root; traces go to <out>/runs/<experiment>/")->required();
  run_cmd->add_option("--experiment", run.experiment, "Experiment name (default: the mode)");
  run_cmd->add_option("--workers", workers, "Parallel episodes")->check(CLI::PositiveNumber);
  run_cmd->add_option("--endpoint", endpoint, "Remote chat-completions URL");
  run_cmd->add_option("--model", model, "Remote model id");
  run_cmd->add_option("--api-key-env", api_key_env, "Environment variable holding the API key");
  run_cmd->add_option("--rpm", rpm, "Global request-per-minute limit (0 = off)")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--record-dir", record_dir, "Remote backend: record cassettes here");
  run_cmd->add_option("--prompts", prompts_dir, "Directory of prompt template overrides");
  run_cmd->add_option("--temperature", run.config.temperature)->check(CLI::NonNegativeNumber);

  // evaluate
  EvaluateOptions eval;
  bool exclude_undelivered = false;
  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate a directory of traces");
  eval_cmd->add_option("--traces", eval.traces, "Directory of .trace files")->required();
  eval_cmd->add_option("--sandbox", eval.sandbox)->required();
  eval_cmd->add_option("--tasks", eval.tasks)->required();
  eval_cmd->add_option("--out", eval.out, "Evaluation file to write")->required();
  eval_cmd->add_flag("--exclude-undelivered-micro", exclude_undelivered,
                     "Leave undelivered tasks out of the micro-rate denominators");

  // report
  std::vector<fs::path> evals;
  std::string report_out;
  auto* report_cmd = app.add_subcommand("report", "Compare evaluation files side by side");
  report_cmd->add_option("evaluations", evals, "Evaluation files")->required();
  report_cmd->add_option("--out", report_out, "Directory for report.txt and report.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run_cmd) {
      run.config.mode = *parse_run_mode(mode);
      run.workers = workers;
      auto& b = run.config.backend;
      b.kind = backend == "remote" ? llm::BackendKind::remote : llm::BackendKind::scripted;
      if (!endpoint.empty()) b.endpoint = endpoint;
      if (!model.empty()) b.model_id = model;
      if (!api_key_env.empty()) b.api_key_env = api_key_env;
      b.requests_per_minute = rpm;
      if (!record_dir.empty()) run.record_dir = record_dir;
      if (!prompts_dir.empty()) run.prompts = prompts_dir;
      run.log = [](const std::string& line) { std::cerr << line << "\n"; };
      auto s = cmd_run(run);
      std::cout << "runs: " << s.ran << " run, " << s.skipped << " skipped, " << s.delivered << " delivered, "
                << s.crashed << " crashed -> " << s.run_dir.string() << "\n";
    } else if (*eval_cmd) {
      eval.metrics.include_undelivered_in_micro = !exclude_undelivered;
      auto e = cmd_evaluate(eval);
      std::cout << metrics_table(e);
    } else if (*report_cmd) {
      std::optional<fs::path> out;
      if (!report_out.empty()) out = report_out;
      std::cout << cmd_report(evals, out).text;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
