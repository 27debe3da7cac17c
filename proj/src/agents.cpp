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

#include "travelmas/agents.hpp"

#include "travelmas/plan.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace travelmas {

namespace {

std::string prompt_name_for(AgentRole role) {
  switch (role) {
    case AgentRole::TransportExpert: return "transport_expert";
    case AgentRole::HotelExpert: return "hotel_expert";
    case AgentRole::RestaurantExpert: return "restaurant_expert";
    case AgentRole::AttractionExpert: return "attraction_expert";
    case AgentRole::Orchestrator: return "orchestrator_system";
    case AgentRole::PlanCompiler: return "compiler_system";
    case AgentRole::PlanCritic: return "critic_system";
    case AgentRole::SingleAgent: return "single_agent_system";
    case AgentRole::PlanSummarizer: return "";
  }
  return "";
}

std::string tool_for(AgentRole role) {
  switch (role) {
    case AgentRole::TransportExpert: return std::string(kFlightSearch);
    case AgentRole::HotelExpert: return std::string(kHotelSearch);
    case AgentRole::RestaurantExpert: return std::string(kRestaurantSearch);
    case AgentRole::AttractionExpert: return std::string(kAttractionSearch);
    default: return "";
  }
}

}  // namespace

void AgentSpec::validate() const {
  bool reader = role == AgentRole::PlanSummarizer || role == AgentRole::PlanCompiler;
  if (notebook_read && !reader) throw ProtocolError(std::string(to_string(role)) + " may not read the notebook");
  if (notebook_write && !is_expert(role)) throw ProtocolError(std::string(to_string(role)) + " may not write the notebook");
  if (role == AgentRole::PlanSummarizer && is_llm_backed) throw ProtocolError("the plan summarizer is not LLM-backed");
  if (!tool_permissions.empty() && !is_expert(role) && role != AgentRole::SingleAgent)
    throw ProtocolError(std::string(to_string(role)) + " has no tools");
}

AgentSpec make_agent_spec(AgentRole role, const PromptSet& prompts) {
  AgentSpec spec;
  spec.role = role;
  if (auto name = prompt_name_for(role); !name.empty()) spec.system_prompt = prompts.get(name);
  if (is_expert(role)) {
    spec.tool_permissions = {tool_for(role)};
    spec.notebook_write = true;
  }
  if (role == AgentRole::SingleAgent)
    for (const auto& t : tool_signatures()) spec.tool_permissions.insert(t.name);
  spec.notebook_read = role == AgentRole::PlanSummarizer || role == AgentRole::PlanCompiler;
  spec.is_llm_backed = role != AgentRole::PlanSummarizer;
  spec.validate();
  return spec;
}

// ---------------------------------------------------------------------------
// Tool-call extraction

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string unquote(std::string s) {
  if (s.size() >= 2) {
    char a = s.front();
    char b = s.back();
    if ((a == '"' && b == '"') || (a == '\'' && b == '\'') || (a == '`' && b == '`')) s = trim(s.substr(1, s.size() - 2));
  }
  return s;
}

// Splits the text between the call parentheses on top-level commas.
std::vector<std::string> split_args(std::string_view inner) {
  std::vector<std::string> args;
  if (trim_view(inner).empty()) return args;
  int depth = 0;
  char quote = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    char c = inner[i];
    if (quote) {
      if (c == quote) quote = 0;
      continue;
    }
    if (c == '"' || c == '`') {
      quote = c;
    } else if (c == '(' || c == '[') {
      ++depth;
    } else if ((c == ')' || c == ']') && depth > 0) {
      --depth;
    } else if (c == ',' && depth == 0) {
      args.push_back(unquote(trim(inner.substr(start, i - start))));
      start = i + 1;
    }
  }
  args.push_back(unquote(trim(inner.substr(start))));
  return args;
}

}  // namespace

ToolCallScan scan_tool_calls(std::string_view reply, const std::set<std::string>& permitted) {
  ToolCallScan scan;
  std::size_t i = 0;
  while (i < reply.size()) {
    if (!ident_char(reply[i]) || (i > 0 && ident_char(reply[i - 1]))) {
      ++i;
      continue;
    }
    std::size_t name_end = i;
    while (name_end < reply.size() && ident_char(reply[name_end])) ++name_end;
    std::string name(reply.substr(i, name_end - i));
    std::size_t paren = name_end;
    while (paren < reply.size() && (reply[paren] == ' ' || reply[paren] == '\t')) ++paren;
    if (paren >= reply.size() || reply[paren] != '(') {
      i = name_end;
      continue;
    }
    bool allowed = permitted.count(name) > 0;
    bool tool_like = find_tool(name) != nullptr || (name.size() > 7 && name.ends_with("_search"));
    if (!allowed) {
      if (tool_like) scan.ignored.push_back(name);
      i = name_end;
      continue;
    }
    int depth = 0;
    std::size_t close = std::string_view::npos;
    for (std::size_t j = paren; j < reply.size(); ++j) {
      if (reply[j] == '(') ++depth;
      if (reply[j] == ')' && --depth == 0) {
        close = j;
        break;
      }
      if (reply[j] == '\n' && depth > 0 && j + 1 < reply.size() && reply[j + 1] == '\n') break;
    }
    if (close == std::string_view::npos) {
      i = name_end;
      continue;
    }
    ToolCall call;
    call.tool = name;
    call.args = split_args(reply.substr(paren + 1, close - paren - 1));
    call.begin = i;
    call.end = close + 1;
    scan.calls.push_back(std::move(call));
    i = close + 1;
  }
  return scan;
}

std::vector<ToolCall> extract_tool_calls(std::string_view reply, const std::set<std::string>& permitted) {
  return scan_tool_calls(reply, permitted).calls;
}

// ---------------------------------------------------------------------------

llm::ChatResponse AgentContext::ask(AgentRole caller, std::string system_prompt, std::vector<llm::ChatTurn> turns) {
  llm::ChatRequest req;
  req.caller = std::string(to_string(caller));
  req.system_prompt = std::move(system_prompt);
  req.turns = std::move(turns);
  req.temperature = temperature;
  req.max_tokens = max_tokens;
  req.model_id = model_id;
  auto resp = gateway.complete(req);
  usage += resp.usage;
  return resp;
}

std::string_view to_string(TurnStatus status) {
  switch (status) {
    case TurnStatus::completed: return "completed";
    case TurnStatus::unknown_tool_abort: return "unknown_tool_abort";
    case TurnStatus::round_cap_exceeded: return "round_cap_exceeded";
  }
  return "completed";
}

std::string render_tool_returns(const std::vector<ToolReturn>& returns) {
  std::string out;
  for (const auto& r : returns) {
    if (!out.empty()) out += "\n";
    if (!r.ok) {
      out += "Error for " + r.call.to_string() + ": " + r.error + "\n";
      continue;
    }
    out += "Results of " + r.call.to_string() + ":\n";
    if (r.records.empty()) out += "(no results)\n";
    for (std::size_t i = 0; i < r.records.size(); ++i)
      out += std::to_string(i + 1) + ". " + render_record(r.records[i]) + "\n";
  }
  return out;
}

namespace {

// Initial context turn followed by the agent's own private rounds.
std::vector<llm::ChatTurn> private_turns(std::string opening, const Observation& obs, const std::string& nudge) {
  std::vector<llm::ChatTurn> turns{{"user", std::move(opening)}};
  if (!obs.private_rounds) return turns;
  for (const auto& round : *obs.private_rounds) {
    turns.push_back({"assistant", round.reply});
    if (!round.returns.empty())
      turns.push_back({"tool", render_tool_returns(round.returns)});
    else if (!nudge.empty())
      turns.push_back({"user", nudge});
  }
  return turns;
}

std::string tool_list(const std::set<std::string>& permitted) {
  std::vector<std::string> names;
  for (const auto& name : permitted) {
    const auto* sig = find_tool(name);
    names.push_back(sig ? name + "(" + join(sig->parameters, ", ") + ")" : name);
  }
  return join(names, ", ");
}

}  // namespace

ExpertTurn expert_turn(const AgentSpec& spec, WorldState& state, const Sandbox& sandbox, AgentContext& ctx,
                       int max_tool_rounds) {
  if (!is_expert(spec.role)) throw ProtocolError(std::string(to_string(spec.role)) + " is not an expert");
  ExpertTurn turn;
  int tool_rounds = 0;
  bool unknown_reported = false;
  state.begin_turn(spec.role);
  try {
    while (true) {
      auto obs = state.observe(spec.role);
      if (obs.notebook) throw ProtocolError("expert observation exposes the notebook");
      auto opening = ctx.prompts.render(
          "expert_user", {{"goal", obs.goal.query_text}, {"conversation", obs.conversation.render()}});
      auto reply = ctx.ask(spec.role, spec.system_prompt, private_turns(std::move(opening), obs, "")).text;
      ++turn.model_calls;
      state.record_reply(reply);

      auto scan = scan_tool_calls(reply, spec.tool_permissions);
      if (scan.calls.empty()) {
        if (scan.ignored.empty()) {
          turn.message = reply;
          break;
        }
        if (unknown_reported) {
          turn.status = TurnStatus::unknown_tool_abort;
          turn.message = "Sorry, I could not finish my part of the plan: I tried to use a tool that is not available "
                         "to me.";
          break;
        }
        unknown_reported = true;
        ToolReturn err{{scan.ignored.front(), {}}, false, {}, "unknown tool '" + scan.ignored.front() +
                                                                   "'. Available tools: " +
                                                                   tool_list(spec.tool_permissions), std::nullopt};
        state.record_private_return(err);
        turn.failed_calls.push_back(std::move(err));
        continue;
      }
      if (tool_rounds >= max_tool_rounds) {
        turn.status = TurnStatus::round_cap_exceeded;
        turn.message = reply;
        break;
      }
      ++tool_rounds;
      turn.private_replies.push_back(reply);
      for (auto& call : scan.calls) {
        auto outcome = invoke_tool(sandbox, call.tool, call.args);
        if (outcome.ok) {
          const auto& entry = state.notebook_write(spec.role, call.invocation(), std::move(outcome.records), sandbox);
          turn.entries.push_back(entry);
          turn.calls.push_back(std::move(call));
        } else {
          ToolReturn err{call.invocation(), false, {}, outcome.error, std::nullopt};
          state.record_private_return(err);
          turn.failed_calls.push_back(std::move(err));
        }
      }
    }
  } catch (...) {
    state.end_turn();
    throw;
  }
  state.end_turn();
  state.append_message(spec.role, turn.message);
  return turn;
}

// ---------------------------------------------------------------------------
// Orchestrator

namespace {

std::string_view roster_blurb(AgentRole role) {
  switch (role) {
    case AgentRole::TransportExpert: return "finds flights between cities on given dates";
    case AgentRole::HotelExpert: return "finds accommodations and checks house rules, room types and minimum nights";
    case AgentRole::RestaurantExpert: return "finds restaurants, cuisines and meal costs";
    case AgentRole::AttractionExpert: return "finds attractions to visit";
    default: return "";
  }
}

std::string render_roster(std::span<const AgentRole> roster) {
  std::string out;
  for (auto r : roster) {
    if (r == AgentRole::PlanSummarizer) continue;
    out += "- " + std::string(to_string(r)) + ": " + std::string(roster_blurb(r)) + "\n";
  }
  out += "- FINISH: hand the gathered evidence to the plan summarizer and plan compiler";
  return out;
}

std::string roster_names(std::span<const AgentRole> roster) {
  std::vector<std::string> names;
  for (auto r : roster)
    if (r != AgentRole::PlanSummarizer) names.emplace_back(to_string(r));
  names.emplace_back("FINISH");
  return join(names, ", ");
}

std::size_t rfind_icase(std::string_view hay, std::string_view needle) {
  auto lower = to_lower(hay);
  return lower.rfind(to_lower(needle));
}

}  // namespace

std::optional<ParsedDecision> parse_orchestrator_reply(std::string_view reply, std::span<const AgentRole> roster) {
  auto next = rfind_icase(reply, "NEXT:");
  if (next == std::string::npos) return std::nullopt;
  auto rest = reply.substr(next + 5);
  auto eol = rest.find('\n');
  std::string token = trim(rest.substr(0, eol));
  // Strip decoration like **HotelExpert**, <FINISH>, "FINISH."
  std::string cleaned;
  for (char c : token)
    if (std::isalnum(static_cast<unsigned char>(c)) || c == ' ' || c == '_' || c == '-') cleaned.push_back(c);
  cleaned = trim(cleaned);
  if (cleaned.empty()) return std::nullopt;

  std::optional<AgentRole> chosen;
  if (normalize_name(cleaned) == "finish") {
    chosen = AgentRole::PlanSummarizer;
  } else if (auto role = parse_role(cleaned)) {
    if (*role == AgentRole::PlanSummarizer) {
      chosen = role;
    } else if (std::find(roster.begin(), roster.end(), *role) != roster.end()) {
      chosen = role;
    }
  }
  if (!chosen) return std::nullopt;

  auto head = reply.substr(0, next);
  auto refl = rfind_icase(head, "REFLECTION:");
  std::string reflection = refl == std::string::npos ? trim(head) : trim(head.substr(refl + 11));
  return ParsedDecision{std::move(reflection), *chosen};
}

AgentRole fixed_order_successor(std::optional<AgentRole> last_expert) {
  if (!last_expert) return kExpertOrder.front();
  auto it = std::find(kExpertOrder.begin(), kExpertOrder.end(), *last_expert);
  if (it == kExpertOrder.end() || it + 1 == kExpertOrder.end()) return AgentRole::PlanSummarizer;
  return *(it + 1);
}

OrchestratorDecision orchestrator_decide(const Observation& obs, std::span<const AgentRole> roster, AgentContext& ctx) {
  if (obs.notebook) throw ProtocolError("orchestrator observation must not contain the notebook");
  if (obs.viewer != AgentRole::Orchestrator) throw ProtocolError("orchestrator_decide needs the orchestrator's view");

  auto system = ctx.prompts.render("orchestrator_system", {{"roster", render_roster(roster)}});
  std::vector<llm::ChatTurn> turns{
      {"user", ctx.prompts.render("orchestrator_user",
                                  {{"goal", obs.goal.query_text}, {"conversation", obs.conversation.render()}})}};

  OrchestratorDecision decision;
  decision.turn_index = static_cast<int>(obs.conversation.size()) + 1;
  for (int attempt = 1; attempt <= 2; ++attempt) {
    auto reply = ctx.ask(AgentRole::Orchestrator, system, turns).text;
    decision.attempts = attempt;
    if (auto parsed = parse_orchestrator_reply(reply, roster)) {
      decision.reflection = std::move(parsed->reflection);
      decision.chosen = parsed->chosen;
      return decision;
    }
    turns.push_back({"assistant", reply});
    turns.push_back({"user", ctx.prompts.render("orchestrator_retry", {{"roster", roster_names(roster)}})});
  }

  std::optional<AgentRole> last_expert;
  for (const auto& m : obs.conversation.messages())
    if (is_expert(m.author)) last_expert = m.author;
  decision.fallback = true;
  decision.chosen = fixed_order_successor(last_expert);
  decision.reflection = "(unparseable orchestrator reply; fixed-order fallback)";
  return decision;
}

// ---------------------------------------------------------------------------
// Planner pipeline

std::string summarize_for_planner(const Goal& goal, const Notebook& notebook) {
  std::string out = "Travel request:\n" + goal.query_text + "\n\n";
  if (notebook.empty()) {
    out += "Planning brief: ";
    out += kNoEvidenceMarker;
    out += "\n";
    return out;
  }
  out += "Planning brief: evidence gathered by the experts\n";
  for (auto domain : {Domain::transportation, Domain::hotel, Domain::restaurant, Domain::attraction}) {
    bool header = false;
    for (const auto& e : notebook.entries()) {
      if (e.domain != domain) continue;
      if (!header) {
        out += "\n== " + std::string(to_string(domain)) + " ==\n";
        header = true;
      }
      out += "Entry " + std::to_string(e.entry_id) + " by " + std::string(to_string(e.author)) + ": " +
             e.tool_call.to_string() + "\n";
      if (e.records.empty()) out += "  (no results)\n";
      for (std::size_t i = 0; i < e.records.size(); ++i)
        out += "  " + std::to_string(i + 1) + ". " + render_record(e.records[i]) + "\n";
    }
  }
  return out;
}

std::string compile_plan(const std::string& brief, const Observation& obs, AgentContext& ctx) {
  if (!obs.notebook) throw ProtocolError("plan compiler requires the notebook view");
  auto user = ctx.prompts.render("compiler_user", {{"brief", brief}, {"conversation", obs.conversation.render()}});
  return ctx.ask(AgentRole::PlanCompiler, ctx.prompts.get("compiler_system"), {{"user", std::move(user)}}).text;
}

bool is_approval(std::string_view critic_reply) {
  auto t = trim_view(critic_reply);
  while (!t.empty() && !std::isalnum(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  if (!starts_with_icase(t, "approved")) return false;
  return t.size() == 8 || !ident_char(t[8]);
}

CritiqueOutcome critic_refine(std::string plan, const std::string& brief, WorldState& state, AgentContext& ctx,
                              int max_rounds, std::size_t message_budget) {
  CritiqueOutcome out;
  out.final_plan = std::move(plan);
  for (int round = 0; round < max_rounds; ++round) {
    if (message_budget == 0) {
      out.cut_off = true;
      break;
    }
    auto obs = state.observe(AgentRole::PlanCritic);
    if (obs.notebook) throw ProtocolError("critic observation must not contain the notebook");
    auto user = ctx.prompts.render("critic_user", {{"goal", obs.goal.query_text},
                                                   {"conversation", obs.conversation.render()},
                                                   {"plan", out.final_plan}});
    auto verdict = ctx.ask(AgentRole::PlanCritic, ctx.prompts.get("critic_system"), {{"user", std::move(user)}}).text;
    state.append_message(AgentRole::PlanCritic, verdict);
    --message_budget;
    ++out.critic_messages;
    if (is_approval(verdict)) {
      out.approved = true;
      break;
    }
    if (message_budget == 0) {
      out.cut_off = true;
      break;
    }
    auto cobs = state.observe(AgentRole::PlanCompiler);
    auto revise = ctx.prompts.render("compiler_revise", {{"brief", brief}, {"conversation", cobs.conversation.render()}});
    auto revised = ctx.ask(AgentRole::PlanCompiler, ctx.prompts.get("compiler_system"), {{"user", std::move(revise)}}).text;
    state.append_message(AgentRole::PlanCompiler, revised);
    --message_budget;
    ++out.revisions;
    out.final_plan = std::move(revised);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Single-agent baseline

SingleAgentRun single_agent_run(const AgentSpec& spec, WorldState& state, const Sandbox& sandbox, AgentContext& ctx,
                                int max_steps) {
  if (spec.role != AgentRole::SingleAgent) throw ProtocolError("single_agent_run needs the SingleAgent spec");
  SingleAgentRun run;
  auto nudge = ctx.prompts.get("single_agent_nudge");
  state.begin_turn(spec.role);
  try {
    while (run.model_calls < max_steps) {
      auto obs = state.observe(spec.role);
      auto opening = ctx.prompts.render("single_agent_user", {{"goal", obs.goal.query_text}});
      auto reply = ctx.ask(spec.role, spec.system_prompt, private_turns(std::move(opening), obs, nudge)).text;
      ++run.model_calls;
      run.rounds.push_back({reply, {}});
      state.record_reply(reply);

      auto scan = scan_tool_calls(reply, spec.tool_permissions);
      if (scan.calls.empty() && scan.ignored.empty()) {
        if (parse_plan(reply)) {
          run.plan_text = reply;
          break;
        }
        continue;  // answered with the nudge on the next request
      }
      for (const auto& name : scan.ignored) {
        ToolReturn err{{name, {}}, false, {}, "unknown tool '" + name + "'", std::nullopt};
        state.record_private_return(err);
        run.rounds.back().returns.push_back(std::move(err));
      }
      for (const auto& call : scan.calls) {
        auto outcome = invoke_tool(sandbox, call.tool, call.args);
        ToolReturn ret{call.invocation(), outcome.ok, std::move(outcome.records), outcome.error, std::nullopt};
        state.record_private_return(ret);
        run.rounds.back().returns.push_back(std::move(ret));
      }
    }
  } catch (...) {
    state.end_turn();
    throw;
  }
  state.end_turn();
  if (run.plan_text) state.append_message(spec.role, *run.plan_text);
  return run;
}

}  // namespace travelmas
