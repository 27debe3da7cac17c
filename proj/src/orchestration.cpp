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

#include "travelmas/orchestration.hpp"

#include <algorithm>
#include <sstream>

#include "travelmas/agents.hpp"
#include "travelmas/common.hpp"
#include "travelmas/world_state.hpp"

namespace travelmas {

using nlohmann::json;

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::fixed: return "fixed";
    case RunMode::orchestrated: return "orchestrated";
    case RunMode::single_agent: return "single_agent";
  }
  return "fixed";
}

std::optional<RunMode> parse_run_mode(std::string_view text) {
  auto t = normalize_name(text);
  if (t == "fixed") return RunMode::fixed;
  if (t == "orchestrated") return RunMode::orchestrated;
  if (t == "single" || t == "single_agent" || t == "single-agent") return RunMode::single_agent;
  return std::nullopt;
}

void RunConfig::validate() const {
  if (max_steps < 0) throw Error("max_steps must be >= 0");
  if (max_critic_rounds < 0) throw Error("max_critic_rounds must be >= 0");
  if (max_tool_rounds_per_turn < 0) throw Error("max_tool_rounds_per_turn must be >= 0");
  if (max_tokens < 1) throw Error("max_tokens must be >= 1");
  if (temperature < 0) throw Error("temperature must be >= 0");
}

std::string RunConfig::digest(const PromptSet& prompts) const {
  json j{{"mode", to_string(mode)},
         {"max_steps", max_steps},
         {"max_critic_rounds", max_critic_rounds},
         {"max_tool_rounds_per_turn", max_tool_rounds_per_turn},
         {"decisions_count_toward_limit", decisions_count_toward_limit},
         {"temperature", temperature},
         {"max_tokens", max_tokens},
         {"backend", backend.kind == llm::BackendKind::remote ? "remote" : "scripted"},
         {"model_id", backend.model_id},
         {"prompts", prompts.digest()}};
  return hex_digest(j.dump());
}

std::vector<AgentRole> RunTrace::speakers() const {
  std::vector<AgentRole> out;
  for (const auto& ev : events) {
    if (ev.value("type", "") != "message") continue;
    if (auto r = parse_role(ev.at("author").get<std::string>())) out.push_back(*r);
  }
  return out;
}

RevisitCounts count_revisits(std::span<const AgentRole> speakers) {
  RevisitCounts turns{};
  for (auto r : speakers) {
    auto it = std::find(kExpertOrder.begin(), kExpertOrder.end(), r);
    if (it != kExpertOrder.end()) ++turns[static_cast<std::size_t>(it - kExpertOrder.begin())];
  }
  for (auto& t : turns) t = std::max(0, t - 1);
  return turns;
}

RevisitCounts count_revisits(const RunTrace& trace) {
  auto s = trace.speakers();
  return count_revisits(s);
}

RevisitStats average_revisits(std::span<const RunTrace> traces) {
  RevisitStats stats;
  stats.tasks = traces.size();
  if (traces.empty()) return stats;
  for (const auto& t : traces) {
    auto c = count_revisits(t);
    for (std::size_t i = 0; i < c.size(); ++i) stats.average[i] += c[i];
  }
  for (auto& a : stats.average) a /= static_cast<double>(traces.size());
  return stats;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json usage_to_json(const llm::TokenUsage& u) {
  return {{"prompt_tokens", u.prompt_tokens}, {"completion_tokens", u.completion_tokens}};
}

json revisits_to_json(const RevisitCounts& c) {
  json j = json::object();
  for (std::size_t i = 0; i < kExpertOrder.size(); ++i) j[std::string(to_string(kExpertOrder[i]))] = c[i];
  return j;
}

}  // namespace

std::string trace_to_jsonl(const RunTrace& t) {
  std::string out;
  json header{{"type", "header"},
              {"schema", kTraceSchema},
              {"task_id", t.task_id},
              {"mode", to_string(t.mode)},
              {"config_digest", t.config_digest}};
  out += header.dump() + "\n";
  for (const auto& ev : t.events) out += ev.dump() + "\n";
  json result{{"type", "result"},
              {"delivered", t.delivered},
              {"final_plan_text", t.final_plan_text ? json(*t.final_plan_text) : json(nullptr)},
              {"final_plan", t.final_plan ? plan_to_json(*t.final_plan) : json(nullptr)},
              {"revisit_counts", revisits_to_json(t.revisit_counts)},
              {"message_count", t.message_count},
              {"notebook_size", t.notebook_size},
              {"error", t.error ? json(*t.error) : json(nullptr)},
              {"usage", usage_to_json(t.usage)}};
  out += result.dump() + "\n";
  return out;
}

RunTrace trace_from_jsonl(std::string_view text) {
  RunTrace t;
  bool have_header = false;
  bool have_result = false;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim_view(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error("trace line " + std::to_string(lineno) + ": " + e.what());
    }
    auto type = j.value("type", "");
    if (!have_header) {
      if (type != "header" || j.value("schema", "") != kTraceSchema)
        throw Error("trace does not start with a " + std::string(kTraceSchema) + " header");
      t.task_id = j.at("task_id").get<std::string>();
      auto mode = parse_run_mode(j.at("mode").get<std::string>());
      if (!mode) throw Error("trace header has unknown mode");
      t.mode = *mode;
      t.config_digest = j.value("config_digest", "");
      have_header = true;
    } else if (type == "result") {
      t.delivered = j.at("delivered").get<bool>();
      if (!j.at("final_plan_text").is_null()) t.final_plan_text = j["final_plan_text"].get<std::string>();
      if (!j.at("final_plan").is_null()) t.final_plan = plan_from_json(j["final_plan"]);
      for (std::size_t i = 0; i < kExpertOrder.size(); ++i)
        t.revisit_counts[i] = j.at("revisit_counts").value(std::string(to_string(kExpertOrder[i])), 0);
      t.message_count = j.value("message_count", 0);
      t.notebook_size = j.value("notebook_size", 0);
      if (!j.at("error").is_null()) t.error = j["error"].get<std::string>();
      t.usage.prompt_tokens = j.at("usage").value("prompt_tokens", std::int64_t{0});
      t.usage.completion_tokens = j.at("usage").value("completion_tokens", std::int64_t{0});
      have_result = true;
    } else {
      if (have_result) throw Error("trace has records after its result");
      t.events.push_back(std::move(j));
    }
  }
  if (!have_header) throw Error("empty trace");
  if (!have_result) throw Error("trace for " + t.task_id + " has no result record");
  return t;
}

// ---------------------------------------------------------------------------
// Episodes

namespace {

class Episode {
 public:
  Episode(const Goal& goal, const Sandbox& sandbox, const RunConfig& config, llm::ChatBackend& backend,
          const PromptSet& prompts)
      : sandbox_(sandbox),
        config_(config),
        prompts_(prompts),
        ctx_{backend, prompts, config.backend.model_id, config.temperature, config.max_tokens},
        state_(goal) {
    config.validate();
    trace_.task_id = goal.task_id;
    trace_.mode = config.mode;
    trace_.config_digest = config.digest(prompts);
  }

  RunTrace run() {
    auto start = std::chrono::steady_clock::now();
    std::optional<std::string> plan_text;
    try {
      switch (config_.mode) {
        case RunMode::fixed: plan_text = run_fixed(); break;
        case RunMode::orchestrated: plan_text = run_orchestrated(); break;
        case RunMode::single_agent: plan_text = run_single(); break;
      }
    } catch (const llm::GatewayError& e) {
      sync();
      emit({{"type", "error"}, {"message", e.what()}});
      trace_.error = e.what();
      plan_text.reset();
    }
    sync();
    finish(std::move(plan_text));
    trace_.wall_time = std::chrono::steady_clock::now() - start;
    return std::move(trace_);
  }

 private:
  void emit(json ev) {
    ev["seq"] = trace_.events.size() + 1;
    trace_.events.push_back(std::move(ev));
  }

  // Logs notebook entries and public messages added since the last call.
  void sync() {
    const auto& entries = state_.notebook().entries();
    for (; seen_entries_ < entries.size(); ++seen_entries_)
      emit({{"type", "notebook"}, {"entry", notebook_entry_to_json(entries[seen_entries_])}});
    const auto& msgs = state_.conversation().messages();
    for (; seen_messages_ < msgs.size(); ++seen_messages_) {
      const auto& m = msgs[seen_messages_];
      emit({{"type", "message"}, {"index", m.index}, {"author", to_string(m.author)}, {"content", m.content}});
    }
  }

  int steps_used() const {
    int used = static_cast<int>(state_.conversation().size());
    if (config_.decisions_count_toward_limit) used += static_cast<int>(state_.decisions().size());
    return used;
  }

  bool budget_left() const { return steps_used() < config_.max_steps; }

  void cutoff() {
    emit({{"type", "cutoff"}, {"reason", "step limit reached"}, {"steps", steps_used()}});
  }

  void expert(AgentRole role) {
    auto spec = make_agent_spec(role, prompts_);
    auto turn = expert_turn(spec, state_, sandbox_, ctx_, config_.max_tool_rounds_per_turn);
    for (const auto& reply : turn.private_replies)
      emit({{"type", "private_reply"}, {"author", to_string(role)}, {"content", reply}});
    for (std::size_t i = 0; i < turn.calls.size(); ++i)
      emit({{"type", "tool_call"},
            {"author", to_string(role)},
            {"call", invocation_to_json(turn.calls[i].invocation())},
            {"ok", true},
            {"entry_id", turn.entries[i].entry_id},
            {"records", turn.entries[i].records.size()}});
    for (const auto& f : turn.failed_calls)
      emit({{"type", "tool_call"},
            {"author", to_string(role)},
            {"call", invocation_to_json(f.call)},
            {"ok", false},
            {"error", f.error}});
    sync();
    if (turn.status != TurnStatus::completed)
      emit({{"type", "turn_status"}, {"author", to_string(role)}, {"status", to_string(turn.status)}});
  }

  // Summarizer -> compiler -> critic. Returns the last compiled plan text.
  std::optional<std::string> endgame() {
    auto sobs = state_.observe(AgentRole::PlanSummarizer);
    auto brief = summarize_for_planner(sobs.goal, *sobs.notebook);
    emit({{"type", "brief"}, {"author", to_string(AgentRole::PlanSummarizer)}, {"content", brief}});
    if (!budget_left()) {
      cutoff();
      return std::nullopt;
    }
    auto plan = compile_plan(brief, state_.observe(AgentRole::PlanCompiler), ctx_);
    state_.append_message(AgentRole::PlanCompiler, plan);
    sync();
    auto remaining = static_cast<std::size_t>(std::max(0, config_.max_steps - steps_used()));
    auto outcome = critic_refine(std::move(plan), brief, state_, ctx_, config_.max_critic_rounds, remaining);
    sync();
    emit({{"type", "critique"},
          {"approved", outcome.approved},
          {"critic_messages", outcome.critic_messages},
          {"revisions", outcome.revisions},
          {"cut_off", outcome.cut_off}});
    return std::move(outcome.final_plan);
  }

  std::optional<std::string> run_fixed() {
    for (auto role : kExpertOrder) {
      if (!budget_left()) {
        cutoff();
        return std::nullopt;
      }
      expert(role);
    }
    return endgame();
  }

  std::optional<std::string> run_orchestrated() {
    const std::vector<AgentRole> roster(kExpertOrder.begin(), kExpertOrder.end());
    while (true) {
      if (!budget_left()) {
        cutoff();
        return std::nullopt;
      }
      auto decision = orchestrator_decide(state_.observe(AgentRole::Orchestrator), roster, ctx_);
      state_.record_decision(decision);
      emit({{"type", "decision"}, {"decision", decision_to_json(decision)}});
      if (decision.chosen == AgentRole::PlanSummarizer) return endgame();
      if (config_.decisions_count_toward_limit && !budget_left()) {
        cutoff();
        return std::nullopt;
      }
      expert(decision.chosen);
    }
  }

  std::optional<std::string> run_single() {
    auto spec = make_agent_spec(AgentRole::SingleAgent, prompts_);
    auto run = single_agent_run(spec, state_, sandbox_, ctx_, config_.max_steps);
    for (const auto& round : run.rounds) {
      emit({{"type", "private_reply"}, {"author", to_string(AgentRole::SingleAgent)}, {"content", round.reply}});
      for (const auto& r : round.returns) {
        json ev{{"type", "tool_call"},
                {"author", to_string(AgentRole::SingleAgent)},
                {"call", invocation_to_json(r.call)},
                {"ok", r.ok}};
        if (r.ok)
          ev["records"] = r.records.size();
        else
          ev["error"] = r.error;
        emit(std::move(ev));
      }
    }
    sync();
    if (!run.plan_text) cutoff();
    return run.plan_text;
  }

  void finish(std::optional<std::string> plan_text) {
    trace_.message_count = static_cast<int>(state_.conversation().size());
    trace_.notebook_size = static_cast<int>(state_.notebook().size());
    trace_.usage = ctx_.usage;
    if (plan_text) {
      auto parsed = parse_plan(*plan_text);
      trace_.final_plan_text = std::move(plan_text);
      if (parsed) trace_.final_plan = std::move(parsed.plan);
    }
    trace_.delivered = trace_.final_plan.has_value() && trace_.message_count <= config_.max_steps;
    trace_.revisit_counts = count_revisits(trace_);
  }

  const Sandbox& sandbox_;
  const RunConfig& config_;
  const PromptSet& prompts_;
  AgentContext ctx_;
  WorldState state_;
  RunTrace trace_;
  std::size_t seen_entries_ = 0;
  std::size_t seen_messages_ = 0;
};

RunTrace run_in_mode(RunMode mode, const Goal& goal, const Sandbox& sandbox, const RunConfig& config,
                     llm::ChatBackend& backend, const PromptSet& prompts) {
  if (config.mode != mode)
    throw Error("run_" + std::string(to_string(mode)) + " called with mode " + std::string(to_string(config.mode)));
  return Episode(goal, sandbox, config, backend, prompts).run();
}

}  // namespace

RunTrace run_episode(const Goal& goal, const Sandbox& sandbox, const RunConfig& config, llm::ChatBackend& backend,
                     const PromptSet& prompts) {
  return Episode(goal, sandbox, config, backend, prompts).run();
}

RunTrace run_fixed(const Goal& goal, const Sandbox& sandbox, const RunConfig& config, llm::ChatBackend& backend,
                   const PromptSet& prompts) {
  return run_in_mode(RunMode::fixed, goal, sandbox, config, backend, prompts);
}

RunTrace run_orchestrated(const Goal& goal, const Sandbox& sandbox, const RunConfig& config,
                          llm::ChatBackend& backend, const PromptSet& prompts) {
  return run_in_mode(RunMode::orchestrated, goal, sandbox, config, backend, prompts);
}

RunTrace run_single_agent(const Goal& goal, const Sandbox& sandbox, const RunConfig& config,
                          llm::ChatBackend& backend, const PromptSet& prompts) {
  return run_in_mode(RunMode::single_agent, goal, sandbox, config, backend, prompts);
}

}  // namespace travelmas
