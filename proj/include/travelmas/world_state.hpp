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

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "travelmas/common.hpp"
#include "travelmas/goal.hpp"
#include "travelmas/roles.hpp"
#include "travelmas/sandbox.hpp"

namespace travelmas {

/// An operation the acting role is not allowed to perform (speaking as the
/// orchestrator, a non-expert writing the notebook, ...).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

struct Message {
  int index = 0;  // 1-based, contiguous
  AgentRole author = AgentRole::TransportExpert;
  std::string content;

  bool operator==(const Message&) const = default;
};

/// Public, append-only message log c = [m_1, ..., m_l].
class Conversation {
 public:
  const std::vector<Message>& messages() const { return messages_; }
  std::size_t size() const { return messages_.size(); }
  bool empty() const { return messages_.empty(); }

  /// "[1] TransportExpert: ..." lines, or "(no messages yet)".
  std::string render() const;

  bool operator==(const Conversation&) const = default;

 private:
  friend class WorldState;
  std::vector<Message> messages_;
};

struct ToolInvocation {
  std::string name;
  std::vector<std::string> args;

  /// `name(arg1, arg2)` as the experts write it.
  std::string to_string() const;
  bool operator==(const ToolInvocation&) const = default;
};

/// One verbatim tool return, typed. Written only by experts.
struct NotebookEntry {
  int entry_id = 0;
  AgentRole author = AgentRole::TransportExpert;
  Domain domain = Domain::transportation;
  ToolInvocation tool_call;
  std::vector<Record> records;
  int turn_index = 0;  // index of the public message the writing turn produces

  bool operator==(const NotebookEntry&) const = default;
};

class Notebook {
 public:
  const std::vector<NotebookEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  bool operator==(const Notebook&) const = default;

 private:
  friend class WorldState;
  std::vector<NotebookEntry> entries_;
};

/// A tool result as seen privately by the agent that issued the call.
struct ToolReturn {
  ToolInvocation call;
  bool ok = true;
  std::vector<Record> records;
  std::string error;
  std::optional<int> entry_id;  // notebook entry holding the durable copy

  bool operator==(const ToolReturn&) const = default;
};

/// One model reply inside an in-flight turn, with the returns of the calls it made.
struct PrivateRound {
  std::string reply;
  std::vector<ToolReturn> returns;

  bool operator==(const PrivateRound&) const = default;
};

/// Kept in the orchestrator's private scratch log, never in c.
struct OrchestratorDecision {
  std::string reflection;
  AgentRole chosen = AgentRole::TransportExpert;
  int turn_index = 0;
  int attempts = 1;
  bool fallback = false;

  bool operator==(const OrchestratorDecision&) const = default;
};

enum class ActionKind { speak, tool_call, select_next_agent, emit_plan, prepare_brief };

/// The action space of each role.
bool action_permitted(AgentRole role, ActionKind kind);

/// The slice of world state one role is allowed to see.
struct Observation {
  AgentRole viewer = AgentRole::Orchestrator;
  Goal goal;
  Conversation conversation;
  std::optional<Notebook> notebook;  // summarizer and compiler only
  std::optional<std::vector<PrivateRound>> private_rounds;  // acting agent's own in-flight turn only

  nlohmann::json to_json() const;
  std::string serialize() const { return to_json().dump(); }
};

/// w = (c, N, G) plus the orchestrator's private scratch log. Mutated by one
/// logical actor at a time; observe() is the only way agents read it.
class WorldState {
 public:
  explicit WorldState(Goal goal);

  const Goal& goal() const { return goal_; }
  const Conversation& conversation() const { return conversation_; }
  const Notebook& notebook() const { return notebook_; }
  const std::vector<OrchestratorDecision>& decisions() const { return decisions_; }

  const Message& append_message(AgentRole author, std::string content);

  /// Appends a typed tool return. Every record must exist in `grounding`;
  /// only experts may write.
  const NotebookEntry& notebook_write(AgentRole author, ToolInvocation call, std::vector<Record> records,
                                      const Sandbox& grounding);

  void record_decision(OrchestratorDecision decision);

  // In-flight turn bookkeeping. Private rounds are visible to the acting
  // role only and are discarded by end_turn().
  void begin_turn(AgentRole role);
  void record_reply(std::string reply);
  void record_private_return(ToolReturn tool_return);
  void end_turn();
  std::optional<AgentRole> acting_role() const;

  Observation observe(AgentRole role) const;

  nlohmann::json to_json() const;
  std::string serialize() const { return to_json().dump(); }

 private:
  struct InFlight {
    AgentRole role;
    std::vector<PrivateRound> rounds;
  };

  Goal goal_;
  Conversation conversation_;
  Notebook notebook_;
  std::vector<OrchestratorDecision> decisions_;
  std::optional<InFlight> in_flight_;
};

nlohmann::json message_to_json(const Message& m);
nlohmann::json invocation_to_json(const ToolInvocation& call);
ToolInvocation invocation_from_json(const nlohmann::json& j);
nlohmann::json notebook_entry_to_json(const NotebookEntry& e);
NotebookEntry notebook_entry_from_json(const nlohmann::json& j);
nlohmann::json decision_to_json(const OrchestratorDecision& d);

}  // namespace travelmas
