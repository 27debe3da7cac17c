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

#include "travelmas/world_state.hpp"

namespace travelmas {

using nlohmann::json;

std::string Conversation::render() const {
  if (messages_.empty()) return "(no messages yet)";
  std::string out;
  for (const auto& m : messages_) {
    out += "[" + std::to_string(m.index) + "] " + std::string(to_string(m.author)) + ": " + m.content;
    if (!out.empty() && out.back() != '\n') out += '\n';
  }
  return out;
}

std::string ToolInvocation::to_string() const { return name + "(" + join(args, ", ") + ")"; }

bool action_permitted(AgentRole role, ActionKind kind) {
  switch (role) {
    case AgentRole::Orchestrator: return kind == ActionKind::select_next_agent;
    case AgentRole::TransportExpert:
    case AgentRole::HotelExpert:
    case AgentRole::RestaurantExpert:
    case AgentRole::AttractionExpert: return kind == ActionKind::speak || kind == ActionKind::tool_call;
    case AgentRole::PlanSummarizer: return kind == ActionKind::prepare_brief;
    case AgentRole::PlanCompiler: return kind == ActionKind::emit_plan || kind == ActionKind::speak;
    case AgentRole::PlanCritic: return kind == ActionKind::speak;
    case AgentRole::SingleAgent:
      return kind == ActionKind::speak || kind == ActionKind::tool_call || kind == ActionKind::emit_plan;
  }
  return false;
}

WorldState::WorldState(Goal goal) : goal_(std::move(goal)) {}

const Message& WorldState::append_message(AgentRole author, std::string content) {
  if (author == AgentRole::Orchestrator) throw ProtocolError("orchestrator never speaks publicly");
  if (!speaks_publicly(author) ||
      (!action_permitted(author, ActionKind::speak) && !action_permitted(author, ActionKind::emit_plan)))
    throw ProtocolError(std::string(to_string(author)) + " does not contribute to the conversation");
  Message m{static_cast<int>(conversation_.messages_.size()) + 1, author, std::move(content)};
  conversation_.messages_.push_back(std::move(m));
  return conversation_.messages_.back();
}

const NotebookEntry& WorldState::notebook_write(AgentRole author, ToolInvocation call, std::vector<Record> records,
                                                const Sandbox& grounding) {
  auto domain = expert_domain(author);
  if (!domain) throw ProtocolError("only experts write to the notebook, not " + std::string(to_string(author)));
  for (const auto& r : records) {
    if (!grounding.entity_exists(record_kind(r), record_name(r)))
      throw ProtocolError("notebook record '" + record_name(r) + "' is not in the sandbox");
  }
  NotebookEntry e;
  e.entry_id = static_cast<int>(notebook_.entries_.size()) + 1;
  e.author = author;
  e.domain = *domain;
  e.tool_call = std::move(call);
  e.records = std::move(records);
  e.turn_index = static_cast<int>(conversation_.size()) + 1;
  notebook_.entries_.push_back(std::move(e));
  const auto& stored = notebook_.entries_.back();

  if (in_flight_ && in_flight_->role == author) {
    if (in_flight_->rounds.empty()) in_flight_->rounds.emplace_back();
    in_flight_->rounds.back().returns.push_back(ToolReturn{stored.tool_call, true, stored.records, {}, stored.entry_id});
  }
  return stored;
}

void WorldState::record_decision(OrchestratorDecision decision) {
  if (decision.chosen == AgentRole::Orchestrator) throw ProtocolError("orchestrator cannot select itself");
  decisions_.push_back(std::move(decision));
}

void WorldState::begin_turn(AgentRole role) {
  if (in_flight_) throw ProtocolError("turn already in flight for " + std::string(to_string(in_flight_->role)));
  in_flight_ = InFlight{role, {}};
}

void WorldState::record_reply(std::string reply) {
  if (!in_flight_) throw ProtocolError("no turn in flight");
  in_flight_->rounds.push_back(PrivateRound{std::move(reply), {}});
}

void WorldState::record_private_return(ToolReturn tool_return) {
  if (!in_flight_) throw ProtocolError("no turn in flight");
  if (in_flight_->rounds.empty()) in_flight_->rounds.emplace_back();
  in_flight_->rounds.back().returns.push_back(std::move(tool_return));
}

void WorldState::end_turn() { in_flight_.reset(); }

std::optional<AgentRole> WorldState::acting_role() const {
  if (!in_flight_) return std::nullopt;
  return in_flight_->role;
}

Observation WorldState::observe(AgentRole role) const {
  Observation obs;
  obs.viewer = role;
  obs.goal = goal_;
  obs.conversation = conversation_;
  if (role == AgentRole::PlanSummarizer || role == AgentRole::PlanCompiler) obs.notebook = notebook_;
  if (in_flight_ && in_flight_->role == role && role != AgentRole::Orchestrator) obs.private_rounds = in_flight_->rounds;
  return obs;
}

// ---------------------------------------------------------------------------
// Serialization

json message_to_json(const Message& m) {
  return {{"index", m.index}, {"author", to_string(m.author)}, {"content", m.content}};
}

json invocation_to_json(const ToolInvocation& call) { return {{"name", call.name}, {"args", call.args}}; }

ToolInvocation invocation_from_json(const json& j) {
  return {j.at("name").get<std::string>(), j.at("args").get<std::vector<std::string>>()};
}

json notebook_entry_to_json(const NotebookEntry& e) {
  json records = json::array();
  for (const auto& r : e.records) records.push_back(record_to_json(r));
  return {{"entry_id", e.entry_id},
          {"author", to_string(e.author)},
          {"domain", to_string(e.domain)},
          {"tool_call", invocation_to_json(e.tool_call)},
          {"records", records},
          {"turn_index", e.turn_index}};
}

NotebookEntry notebook_entry_from_json(const json& j) {
  NotebookEntry e;
  e.entry_id = j.at("entry_id").get<int>();
  auto author = parse_role(j.at("author").get<std::string>());
  auto domain = parse_domain(j.at("domain").get<std::string>());
  if (!author || !domain) throw Error("bad notebook entry in trace");
  e.author = *author;
  e.domain = *domain;
  e.tool_call = invocation_from_json(j.at("tool_call"));
  for (const auto& r : j.at("records")) e.records.push_back(record_from_json(r));
  e.turn_index = j.at("turn_index").get<int>();
  return e;
}

json decision_to_json(const OrchestratorDecision& d) {
  return {{"reflection", d.reflection},
          {"chosen", to_string(d.chosen)},
          {"turn_index", d.turn_index},
          {"attempts", d.attempts},
          {"fallback", d.fallback}};
}

namespace {

json tool_return_to_json(const ToolReturn& t) {
  json records = json::array();
  for (const auto& r : t.records) records.push_back(record_to_json(r));
  json j{{"call", invocation_to_json(t.call)}, {"ok", t.ok}, {"records", records}};
  if (!t.ok) j["error"] = t.error;
  if (t.entry_id) j["entry_id"] = *t.entry_id;
  return j;
}

json conversation_to_json(const Conversation& c) {
  json out = json::array();
  for (const auto& m : c.messages()) out.push_back(message_to_json(m));
  return out;
}

json notebook_to_json(const Notebook& n) {
  json out = json::array();
  for (const auto& e : n.entries()) out.push_back(notebook_entry_to_json(e));
  return out;
}

}  // namespace

json Observation::to_json() const {
  json j{{"viewer", to_string(viewer)}, {"goal", goal.query_text}, {"conversation", conversation_to_json(conversation)}};
  if (notebook) j["notebook"] = notebook_to_json(*notebook);
  if (private_rounds) {
    json rounds = json::array();
    for (const auto& r : *private_rounds) {
      json returns = json::array();
      for (const auto& t : r.returns) returns.push_back(tool_return_to_json(t));
      rounds.push_back({{"reply", r.reply}, {"returns", returns}});
    }
    j["private_rounds"] = rounds;
  }
  return j;
}

json WorldState::to_json() const {
  json decisions = json::array();
  for (const auto& d : decisions_) decisions.push_back(decision_to_json(d));
  return {{"goal", goal_to_json(goal_)},
          {"conversation", conversation_to_json(conversation_)},
          {"notebook", notebook_to_json(notebook_)},
          {"orchestrator_scratch", decisions}};
}

}  // namespace travelmas
