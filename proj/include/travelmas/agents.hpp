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

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "travelmas/llm_gateway.hpp"
#include "travelmas/prompts.hpp"
#include "travelmas/roles.hpp"
#include "travelmas/sandbox.hpp"
#include "travelmas/world_state.hpp"

namespace travelmas {

struct AgentSpec {
  AgentRole role = AgentRole::TransportExpert;
  std::string system_prompt;
  std::set<std::string> tool_permissions;
  bool notebook_read = false;
  bool notebook_write = false;
  bool is_llm_backed = true;

  /// Throws ProtocolError when the permissions contradict the role.
  void validate() const;
};

AgentSpec make_agent_spec(AgentRole role, const PromptSet& prompts);

/// A `name(arg, ...)` occurrence in a model reply.
struct ToolCall {
  std::string tool;
  std::vector<std::string> args;
  std::size_t begin = 0;  // byte span of the call in the reply
  std::size_t end = 0;

  ToolInvocation invocation() const { return {tool, args}; }
  bool operator==(const ToolCall&) const = default;
};

struct ToolCallScan {
  std::vector<ToolCall> calls;
  std::vector<std::string> ignored;  // tool-like names outside the permission set
};

/// Finds permitted calls in order. Arguments are split on top-level commas
/// and trimmed; one layer of matching quotes is removed. Names that look like
/// tools (`*_search`) but are not permitted are reported in `ignored`.
ToolCallScan scan_tool_calls(std::string_view reply, const std::set<std::string>& permitted);
std::vector<ToolCall> extract_tool_calls(std::string_view reply, const std::set<std::string>& permitted);

/// Model access and decoding settings shared by the agents of one run.
struct AgentContext {
  llm::ChatBackend& gateway;
  const PromptSet& prompts;
  std::string model_id;
  double temperature = 0.0;
  int max_tokens = 2048;
  llm::TokenUsage usage{};

  llm::ChatResponse ask(AgentRole caller, std::string system_prompt, std::vector<llm::ChatTurn> turns);
};

enum class TurnStatus { completed, unknown_tool_abort, round_cap_exceeded };

std::string_view to_string(TurnStatus status);

struct ExpertTurn {
  std::string message;
  std::vector<NotebookEntry> entries;
  std::vector<ToolCall> calls;  // executed ones, in order
  std::vector<ToolReturn> failed_calls;
  std::vector<std::string> private_replies;  // replies that issued tool calls
  TurnStatus status = TurnStatus::completed;
  int model_calls = 0;
};

/// Runs one expert turn against `state`: query, execute tool calls, feed the
/// returns back privately, and publish the first reply without tool calls.
/// Each executed call becomes one notebook entry.
ExpertTurn expert_turn(const AgentSpec& spec, WorldState& state, const Sandbox& sandbox, AgentContext& ctx,
                       int max_tool_rounds = 5);

struct ParsedDecision {
  std::string reflection;
  AgentRole chosen;
};

/// Parses "REFLECTION: ... NEXT: <name|FINISH>". FINISH maps to the plan
/// summarizer; names outside `roster` are rejected.
std::optional<ParsedDecision> parse_orchestrator_reply(std::string_view reply, std::span<const AgentRole> roster);

/// Transport -> Hotel -> Restaurant -> Attraction -> PlanSummarizer.
AgentRole fixed_order_successor(std::optional<AgentRole> last_expert);

/// Picks the next agent from (G, c) only. Re-prompts once on an unparseable
/// reply, then falls back to the fixed-order successor of the last expert.
OrchestratorDecision orchestrator_decide(const Observation& obs, std::span<const AgentRole> roster, AgentContext& ctx);

/// Deterministic, non-LLM planning brief: the goal text, then every notebook
/// record grouped by domain in write order, rendered field by field.
std::string summarize_for_planner(const Goal& goal, const Notebook& notebook);

inline constexpr std::string_view kNoEvidenceMarker = "(no gathered evidence)";

/// One compiler call; the reply is returned raw.
std::string compile_plan(const std::string& brief, const Observation& obs, AgentContext& ctx);

struct CritiqueOutcome {
  std::string final_plan;
  int critic_messages = 0;
  int revisions = 0;
  bool approved = false;
  bool cut_off = false;  // the message budget ran out
};

bool is_approval(std::string_view critic_reply);

/// Critic/compiler exchange appended to the conversation. Ends on approval,
/// after `max_rounds` critic messages, or when `message_budget` public
/// messages have been spent.
CritiqueOutcome critic_refine(std::string plan, const std::string& brief, WorldState& state, AgentContext& ctx,
                              int max_rounds, std::size_t message_budget);

/// Tool results as the issuing agent sees them privately.
std::string render_tool_returns(const std::vector<ToolReturn>& returns);

struct SingleAgentRun {
  std::optional<std::string> plan_text;  // the reply that parsed as a plan
  std::vector<PrivateRound> rounds;      // every reply with the returns it produced
  int model_calls = 0;
};

/// Baseline loop for one agent holding every tool: call the model, run any
/// tool calls and feed the returns back, until a reply without tool calls
/// parses as a plan or `max_steps` model calls are spent. A reply with
/// neither is answered with a nudge. The plan, if any, is published as the
/// only public message.
SingleAgentRun single_agent_run(const AgentSpec& spec, WorldState& state, const Sandbox& sandbox, AgentContext& ctx,
                                int max_steps);

}  // namespace travelmas
