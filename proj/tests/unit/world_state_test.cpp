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

#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "travelmas/world_state.hpp"

namespace travelmas {
namespace {

using testing::base_goal;
using testing::fixture_sandbox;

std::vector<Record> hotels_in(const std::string& city) {
  std::vector<Record> out;
  for (auto& h : fixture_sandbox().hotel_search(city)) out.emplace_back(h);
  return out;
}

TEST(AppendMessage, IndicesAreContiguous) {
  WorldState w(base_goal());
  EXPECT_EQ(w.append_message(AgentRole::TransportExpert, "flights found").index, 1);
  EXPECT_EQ(w.conversation().size(), 1u);
  EXPECT_EQ(w.append_message(AgentRole::HotelExpert, "hotels found").index, 2);
  EXPECT_EQ(w.conversation().messages()[0].content, "flights found");
  EXPECT_EQ(w.conversation().messages()[1].author, AgentRole::HotelExpert);
}

TEST(AppendMessage, OrchestratorNeverSpeaks) {
  WorldState w(base_goal());
  try {
    w.append_message(AgentRole::Orchestrator, "I pick the hotel expert");
    FAIL() << "expected ProtocolError";
  } catch (const ProtocolError& e) {
    EXPECT_STREQ(e.what(), "orchestrator never speaks publicly");
  }
  EXPECT_THROW(w.append_message(AgentRole::PlanSummarizer, "brief"), ProtocolError);
  EXPECT_TRUE(w.conversation().empty());
}

TEST(NotebookWrite, ExpertEntryIsTypedAndVerbatim) {
  WorldState w(base_goal());
  auto records = hotels_in("Rome");
  ASSERT_EQ(records.size(), 3u);
  const auto& e = w.notebook_write(AgentRole::HotelExpert, {"hotel_search", {"Rome"}}, records, fixture_sandbox());
  EXPECT_EQ(e.domain, Domain::hotel);
  EXPECT_EQ(e.records, records);
  EXPECT_EQ(e.entry_id, 1);
  EXPECT_EQ(e.turn_index, 1);
  EXPECT_TRUE(w.conversation().empty());
}

TEST(NotebookWrite, NonExpertsRejected) {
  WorldState w(base_goal());
  EXPECT_THROW(w.notebook_write(AgentRole::PlanCompiler, {"hotel_search", {"Rome"}}, {}, fixture_sandbox()),
               ProtocolError);
  EXPECT_THROW(w.notebook_write(AgentRole::Orchestrator, {"hotel_search", {"Rome"}}, {}, fixture_sandbox()),
               ProtocolError);
  EXPECT_TRUE(w.notebook().empty());
}

TEST(NotebookWrite, UngroundedRecordRejected) {
  WorldState w(base_goal());
  HotelRecord fake{"Nowhere Inn", "Rome", 10, "Private room", {}, 1, 2};
  EXPECT_THROW(w.notebook_write(AgentRole::HotelExpert, {"hotel_search", {"Rome"}}, {fake}, fixture_sandbox()),
               ProtocolError);
}

TEST(NotebookWrite, TwoWritesInOneTurnStayOrdered) {
  WorldState w(base_goal());
  w.begin_turn(AgentRole::TransportExpert);
  w.record_reply("flight_search(New York, London, 2022-10-01)\nflight_search(London, New York, 2022-10-03)");
  std::vector<Record> out, back;
  for (auto& f : fixture_sandbox().flight_search("New York", "London", "2022-10-01")) out.emplace_back(f);
  for (auto& f : fixture_sandbox().flight_search("London", "New York", "2022-10-03")) back.emplace_back(f);
  w.notebook_write(AgentRole::TransportExpert, {"flight_search", {"New York", "London", "2022-10-01"}}, out,
                   fixture_sandbox());
  w.notebook_write(AgentRole::TransportExpert, {"flight_search", {"London", "New York", "2022-10-03"}}, back,
                   fixture_sandbox());
  ASSERT_EQ(w.notebook().size(), 2u);
  EXPECT_EQ(w.notebook().entries()[0].tool_call.args[0], "New York");
  EXPECT_EQ(w.notebook().entries()[1].tool_call.args[0], "London");
  auto obs = w.observe(AgentRole::TransportExpert);
  ASSERT_TRUE(obs.private_rounds);
  ASSERT_EQ(obs.private_rounds->size(), 1u);
  EXPECT_EQ((*obs.private_rounds)[0].returns.size(), 2u);
  w.end_turn();
}

TEST(Observe, OrchestratorSeesNoNotebook) {
  WorldState w(base_goal());
  w.notebook_write(AgentRole::HotelExpert, {"hotel_search", {"Rome"}}, hotels_in("Rome"), fixture_sandbox());
  auto obs = w.observe(AgentRole::Orchestrator);
  EXPECT_FALSE(obs.notebook);
  EXPECT_FALSE(obs.private_rounds);
  EXPECT_EQ(obs.serialize().find("Trastevere"), std::string::npos);
  EXPECT_FALSE(w.observe(AgentRole::PlanCritic).notebook);
}

TEST(Observe, CompilerAndSummarizerSeeNotebook) {
  WorldState w(base_goal());
  w.notebook_write(AgentRole::HotelExpert, {"hotel_search", {"Rome"}}, hotels_in("Rome"), fixture_sandbox());
  auto obs = w.observe(AgentRole::PlanCompiler);
  ASSERT_TRUE(obs.notebook);
  EXPECT_EQ(obs.notebook->size(), 1u);
  EXPECT_TRUE(w.observe(AgentRole::PlanSummarizer).notebook);
}

TEST(Observe, ToolReturnsStayWithTheCaller) {
  WorldState w(base_goal());
  w.begin_turn(AgentRole::TransportExpert);
  w.record_reply("flight_search(New York, London, 2022-10-01)");
  std::vector<Record> out;
  for (auto& f : fixture_sandbox().flight_search("New York", "London", "2022-10-01")) out.emplace_back(f);
  w.notebook_write(AgentRole::TransportExpert, {"flight_search", {"New York", "London", "2022-10-01"}}, out,
                   fixture_sandbox());
  EXPECT_FALSE(w.observe(AgentRole::HotelExpert).private_rounds);
  EXPECT_TRUE(w.observe(AgentRole::TransportExpert).private_rounds);
  w.end_turn();
  w.append_message(AgentRole::TransportExpert, "Flights are available.");

  w.begin_turn(AgentRole::HotelExpert);
  auto hobs = w.observe(AgentRole::HotelExpert);
  ASSERT_TRUE(hobs.private_rounds);
  EXPECT_TRUE(hobs.private_rounds->empty());
  EXPECT_EQ(hobs.serialize().find("F1001"), std::string::npos);
  EXPECT_FALSE(w.observe(AgentRole::TransportExpert).private_rounds);
  w.end_turn();
}

TEST(Observe, DecisionsStayPrivate) {
  WorldState w(base_goal());
  w.record_decision({"secret reflection about budget", AgentRole::HotelExpert, 1, 1, false});
  for (auto role : {AgentRole::Orchestrator, AgentRole::HotelExpert, AgentRole::PlanCompiler, AgentRole::PlanCritic})
    EXPECT_EQ(w.observe(role).serialize().find("secret reflection"), std::string::npos);
  EXPECT_THROW(w.record_decision({"", AgentRole::Orchestrator, 1, 1, false}), ProtocolError);
}

TEST(Turns, OnlyOneTurnInFlight) {
  WorldState w(base_goal());
  w.begin_turn(AgentRole::HotelExpert);
  EXPECT_THROW(w.begin_turn(AgentRole::TransportExpert), ProtocolError);
  EXPECT_EQ(w.acting_role(), AgentRole::HotelExpert);
  w.end_turn();
  EXPECT_FALSE(w.acting_role());
  EXPECT_THROW(w.record_reply("x"), ProtocolError);
}

TEST(Actions, PermittedPerRole) {
  EXPECT_TRUE(action_permitted(AgentRole::Orchestrator, ActionKind::select_next_agent));
  EXPECT_FALSE(action_permitted(AgentRole::Orchestrator, ActionKind::speak));
  EXPECT_TRUE(action_permitted(AgentRole::HotelExpert, ActionKind::tool_call));
  EXPECT_FALSE(action_permitted(AgentRole::PlanCritic, ActionKind::tool_call));
  EXPECT_TRUE(action_permitted(AgentRole::PlanCompiler, ActionKind::emit_plan));
}

TEST(WorldStateProperties, RandomOpsKeepPrefixesAndDeterminism) {
  auto replay = [](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    WorldState w(base_goal());
    std::vector<Message> seen_msgs;
    std::vector<NotebookEntry> seen_entries;
    const char* cities[] = {"London", "Rome", "New York", "Atlantis"};
    for (int step = 0; step < 60; ++step) {
      auto expert = kExpertOrder[rng() % 4];
      auto city = cities[rng() % 4];
      switch (rng() % 3) {
        case 0: w.append_message(expert, "note " + std::to_string(step)); break;
        case 1: {
          auto out = invoke_tool(fixture_sandbox(), "hotel_search", {city});
          w.notebook_write(AgentRole::HotelExpert, {"hotel_search", {city}}, out.records, fixture_sandbox());
          break;
        }
        default: w.record_decision({"r", expert, step, 1, false});
      }
      const auto& msgs = w.conversation().messages();
      for (std::size_t i = 0; i < seen_msgs.size(); ++i) EXPECT_EQ(msgs[i], seen_msgs[i]);
      const auto& entries = w.notebook().entries();
      for (std::size_t i = 0; i < seen_entries.size(); ++i) EXPECT_EQ(entries[i], seen_entries[i]);
      for (const auto& e : entries)
        for (const auto& r : e.records) EXPECT_TRUE(fixture_sandbox().entity_exists(record_kind(r), record_name(r)));
      seen_msgs = msgs;
      seen_entries = entries;
    }
    return w.serialize();
  };
  for (std::uint64_t seed = 1; seed <= 20; ++seed) EXPECT_EQ(replay(seed), replay(seed));
}

}  // namespace
}  // namespace travelmas
