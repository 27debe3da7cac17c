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

#include <array>
#include <chrono>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "travelmas/goal.hpp"
#include "travelmas/llm_gateway.hpp"
#include "travelmas/plan.hpp"
#include "travelmas/prompts.hpp"
#include "travelmas/roles.hpp"
#include "travelmas/sandbox.hpp"

namespace travelmas {

enum class RunMode { fixed, orchestrated, single_agent };

std::string_view to_string(RunMode mode);
/// Accepts "fixed", "orchestrated", "single" and "single_agent".
std::optional<RunMode> parse_run_mode(std::string_view text);

struct RunConfig {
  RunMode mode = RunMode::fixed;
  int max_steps = 30;  // public messages; model calls in single-agent mode
  int max_critic_rounds = 3;
  int max_tool_rounds_per_turn = 5;
  bool decisions_count_toward_limit = false;
  double temperature = 0.0;
  int max_tokens = 2048;
  llm::BackendConfig backend;

  /// Throws Error on a negative limit or an invalid backend.
  void validate() const;

  /// Digest of the settings that shape an episode. Cassette and output paths
  /// are excluded so every task of a batch shares one digest.
  std::string digest(const PromptSet& prompts) const;
};

/// Per-expert integers in kExpertOrder.
using RevisitCounts = std::array<int, 4>;

struct RunTrace {
  std::string task_id;
  RunMode mode = RunMode::fixed;
  std::string config_digest;
  std::vector<nlohmann::json> events;  // each carries "seq" and "type"
  bool delivered = false;
  std::optional<std::string> final_plan_text;
  std::optional<Plan> final_plan;
  RevisitCounts revisit_counts{};
  int message_count = 0;
  int notebook_size = 0;
  std::optional<std::string> error;
  llm::TokenUsage usage;
  std::chrono::duration<double> wall_time{0};  // not serialized

  /// Authors of the public messages, in order.
  std::vector<AgentRole> speakers() const;
};

/// Line-delimited: a header record, one record per event, a result record.
std::string trace_to_jsonl(const RunTrace& trace);
RunTrace trace_from_jsonl(std::string_view text);

inline constexpr std::string_view kTraceSchema = "travelmas.trace/1";

/// Turns after the first, per expert.
RevisitCounts count_revisits(std::span<const AgentRole> speakers);
RevisitCounts count_revisits(const RunTrace& trace);

struct RevisitStats {
  std::array<double, 4> average{};  // kExpertOrder
  std::size_t tasks = 0;
};

RevisitStats average_revisits(std::span<const RunTrace> traces);

/// Drives one episode in the configured mode. Gateway failures end the
/// episode undelivered with an error event; other exceptions propagate.
RunTrace run_episode(const Goal& goal, const Sandbox& sandbox, const RunConfig& config, llm::ChatBackend& backend,
                     const PromptSet& prompts);

RunTrace run_fixed(const Goal& goal, const Sandbox& sandbox, const RunConfig& config, llm::ChatBackend& backend,
                   const PromptSet& prompts);
RunTrace run_orchestrated(const Goal& goal, const Sandbox& sandbox, const RunConfig& config,
                          llm::ChatBackend& backend, const PromptSet& prompts);
RunTrace run_single_agent(const Goal& goal, const Sandbox& sandbox, const RunConfig& config,
                          llm::ChatBackend& backend, const PromptSet& prompts);

}  // namespace travelmas
