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

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "travelmas/agents.hpp"
#include "travelmas/plan.hpp"

namespace travelmas {
namespace {

using testing::base_goal;
using testing::fixture_sandbox;
using testing::scripted;

const std::set<std::string> kAll{"flight_search", "hotel_search", "resturant_search", "attraction_search"};

struct ExtractionCase {
  const char* reply;
  std::set<std::string> permitted;
  std::vector<std::vector<std::string>> calls;  // tool name followed by args
  std::vector<std::string> ignored;
};

// Hand-labeled extraction fixtures.
const std::vector<ExtractionCase>& extraction_cases() {
  static const std::vector<ExtractionCase> cases{
      {"flight_search(New York, London, 2022-10-01)", kAll, {{"flight_search", "New York", "London", "2022-10-01"}}, {}},
      {"No tools needed, the plan is complete.", kAll, {}, {}},
      {"As noted (see above), I will call hotel_search(St. Louis) next.", kAll, {{"hotel_search", "St. Louis"}}, {}},
      {"hotel_search(Rome)\nhotel_search(London)", kAll, {{"hotel_search", "Rome"}, {"hotel_search", "London"}}, {}},
      {"hotel_search (Rome)", kAll, {{"hotel_search", "Rome"}}, {}},
      {"hotel_search(\"Rome\")", kAll, {{"hotel_search", "Rome"}}, {}},
      {"hotel_search('New York')", kAll, {{"hotel_search", "New York"}}, {}},
      {"hotel_search( Rome )", kAll, {{"hotel_search", "Rome"}}, {}},
      {"hotel_search(Rome)", {"flight_search"}, {}, {"hotel_search"}},
      {"restaurant_search(Rome)", {"resturant_search"}, {}, {"restaurant_search"}},
      {"resturant_search(Tokyo)", {"resturant_search"}, {{"resturant_search", "Tokyo"}}, {}},
      {"myhotel_search(Rome)", {"hotel_search"}, {}, {"myhotel_search"}},
      {"xhotel_search(Rome) is not a tool", {"hotel_search"}, {}, {"xhotel_search"}},
      {"hotel_search()", kAll, {{"hotel_search"}}, {}},
      {"flight_search(New York, London)", kAll, {{"flight_search", "New York", "London"}}, {}},
      {"flight_search(\"Washington, D.C.\", London, 2022-10-01)", kAll,
       {{"flight_search", "Washington, D.C.", "London", "2022-10-01"}}, {}},
      {"attraction_search(London) and then flight_search(London, Rome, 2022-10-05).", kAll,
       {{"attraction_search", "London"}, {"flight_search", "London", "Rome", "2022-10-05"}}, {}},
      {"hotel_search(Rome", kAll, {}, {}},
      {"`hotel_search(Rome)`", kAll, {{"hotel_search", "Rome"}}, {}},
      {"- hotel_search(Rome)\n- hotel_search(Milan)", {"hotel_search"},
       {{"hotel_search", "Rome"}, {"hotel_search", "Milan"}}, {}},
      {"Call flight_search(Departure City, Destination City, Date) to search.", {"flight_search"},
       {{"flight_search", "Departure City", "Destination City", "Date"}}, {}},
      {"print(hotel_search) is not a call", kAll, {}, {}},
      {"hotel_search(Rome (Italy))", kAll, {{"hotel_search", "Rome (Italy)"}}, {}},
      {"HOTEL_SEARCH(Rome)", kAll, {}, {}},
  };
  return cases;
}

TEST(ExtractToolCalls, HandLabeledFixtures) {
  ASSERT_GE(extraction_cases().size(), 20u);
  for (const auto& c : extraction_cases()) {
    auto scan = scan_tool_calls(c.reply, c.permitted);
    std::vector<std::vector<std::string>> got;
    for (const auto& call : scan.calls) {
      std::vector<std::string> row{call.tool};
      row.insert(row.end(), call.args.begin(), call.args.end());
      got.push_back(row);
    }
    EXPECT_EQ(got, c.calls) << c.reply;
    EXPECT_EQ(scan.ignored, c.ignored) << c.reply;
  }
}

TEST(ExtractToolCalls, SpanCoversTheCall) {
  std::string reply = "Next: hotel_search(Rome).";
  auto calls = extract_tool_calls(reply, kAll);
  ASSERT_EQ(calls.size(), 1u);
  EXPECT_EQ(reply.substr(calls[0].begin, calls[0].end - calls[0].begin), "hotel_search(Rome)");
}

TEST(ExtractToolCalls, NeverOutsidePermissions) {
  for (const auto& c : extraction_cases())
    for (const auto& perm : {std::set<std::string>{"hotel_search"}, std::set<std::string>{}})
      for (const auto& call : extract_tool_calls(c.reply, perm)) EXPECT_TRUE(perm.count(call.tool)) << c.reply;
}

TEST(AgentSpec, PermissionsFollowRoles) {
  auto prompts = PromptSet::defaults();
  auto hotel = make_agent_spec(AgentRole::HotelExpert, prompts);
  EXPECT_EQ(hotel.tool_permissions, std::set<std::string>{"hotel_search"});
  EXPECT_TRUE(hotel.notebook_write);
  EXPECT_FALSE(hotel.notebook_read);
  EXPECT_NE(hotel.system_prompt.find("<checking hotel requirements>"), std::string::npos);

  auto summarizer = make_agent_spec(AgentRole::PlanSummarizer, prompts);
  EXPECT_FALSE(summarizer.is_llm_backed);
  EXPECT_TRUE(summarizer.notebook_read);
  EXPECT_TRUE(make_agent_spec(AgentRole::PlanCompiler, prompts).notebook_read);
  EXPECT_FALSE(make_agent_spec(AgentRole::PlanCritic, prompts).notebook_read);
  EXPECT_FALSE(make_agent_spec(AgentRole::Orchestrator, prompts).notebook_read);
  EXPECT_EQ(make_agent_spec(AgentRole::SingleAgent, prompts).tool_permissions, kAll);

  AgentSpec bad = make_agent_spec(AgentRole::PlanCritic, prompts);
  bad.notebook_read = true;
  EXPECT_THROW(bad.validate(), ProtocolError);
  bad = make_agent_spec(AgentRole::PlanCompiler, prompts);
  bad.notebook_write = true;
  EXPECT_THROW(bad.validate(), ProtocolError);
}

struct Harness {
  explicit Harness(const testing::Script& script) : backend(scripted(script)), ctx{*backend, prompts, "m"} {}
  PromptSet prompts = PromptSet::defaults();
  std::unique_ptr<llm::ScriptedBackend> backend;
  AgentContext ctx;
  WorldState state{base_goal()};
};

TEST(ExpertTurn, NoToolCallsPublishesImmediately) {
  Harness h({{AgentRole::HotelExpert, "I have nothing to look up."}});
  auto turn = expert_turn(make_agent_spec(AgentRole::HotelExpert, h.prompts), h.state, fixture_sandbox(), h.ctx);
  EXPECT_EQ(turn.message, "I have nothing to look up.");
  EXPECT_TRUE(turn.entries.empty());
  EXPECT_TRUE(h.state.notebook().empty());
  ASSERT_EQ(h.state.conversation().size(), 1u);
  EXPECT_EQ(h.state.conversation().messages()[0].author, AgentRole::HotelExpert);
}

TEST(ExpertTurn, HotelSearchRomeWritesOneEntry) {
  Harness h({{AgentRole::HotelExpert, "hotel_search(Rome)"}, {AgentRole::HotelExpert, "Rome has three options."}});
  auto turn = expert_turn(make_agent_spec(AgentRole::HotelExpert, h.prompts), h.state, fixture_sandbox(), h.ctx);
  ASSERT_EQ(h.state.notebook().size(), 1u);
  std::vector<Record> expect;
  for (auto& r : fixture_sandbox().hotel_search("Rome")) expect.emplace_back(r);
  EXPECT_EQ(h.state.notebook().entries()[0].records, expect);
  EXPECT_EQ(h.state.notebook().entries()[0].turn_index, 1);
  EXPECT_EQ(turn.message, "Rome has three options.");
  EXPECT_EQ(h.state.conversation().size(), 1u);
  EXPECT_EQ(turn.calls.size(), turn.entries.size());
  EXPECT_EQ(turn.model_calls, 2);
}

TEST(ExpertTurn, TwoFlightSearchesInCallOrder) {
  Harness h({{AgentRole::TransportExpert, "flight_search(New York, Paris, 2022-10-01)"},
             {AgentRole::TransportExpert, "No flights to Paris. flight_search(New York, London, 2022-10-01)"},
             {AgentRole::TransportExpert, "Take F1002."}});
  auto turn = expert_turn(make_agent_spec(AgentRole::TransportExpert, h.prompts), h.state, fixture_sandbox(), h.ctx);
  ASSERT_EQ(turn.entries.size(), 2u);
  EXPECT_EQ(turn.entries[0].tool_call.to_string(), "flight_search(New York, Paris, 2022-10-01)");
  EXPECT_TRUE(turn.entries[0].records.empty());
  EXPECT_EQ(turn.entries[1].tool_call.to_string(), "flight_search(New York, London, 2022-10-01)");
  EXPECT_EQ(turn.entries[1].records.size(), 2u);
  EXPECT_EQ(turn.entries[0].entry_id, 1);
  EXPECT_EQ(turn.entries[1].entry_id, 2);
  for (std::size_t i = 0; i < turn.calls.size(); ++i)
    EXPECT_EQ(turn.calls[i].invocation(), turn.entries[i].tool_call);
}

TEST(ExpertTurn, ToolReturnsReachTheModelPrivately) {
  // The second request must carry the tool results; the digest check fails
  // otherwise. Build the expected request by replaying once unchecked.
  Harness probe({{AgentRole::HotelExpert, "hotel_search(Rome)"}, {AgentRole::HotelExpert, "done"}});
  struct Spy : llm::ChatBackend {
    llm::ChatBackend& inner;
    std::vector<llm::ChatRequest> seen;
    explicit Spy(llm::ChatBackend& b) : inner(b) {}
    llm::ChatResponse complete(const llm::ChatRequest& r) override {
      seen.push_back(r);
      return inner.complete(r);
    }
  } spy(*probe.backend);
  AgentContext ctx{spy, probe.prompts, "m"};
  expert_turn(make_agent_spec(AgentRole::HotelExpert, probe.prompts), probe.state, fixture_sandbox(), ctx);
  ASSERT_EQ(spy.seen.size(), 2u);
  const auto& second = spy.seen[1];
  ASSERT_EQ(second.turns.size(), 3u);
  EXPECT_EQ(second.turns[1].text, "hotel_search(Rome)");
  EXPECT_NE(second.turns[2].text.find("Trastevere Apartment"), std::string::npos);
  // The public message and later observations carry no tool output.
  EXPECT_EQ(probe.state.observe(AgentRole::RestaurantExpert).serialize().find("Trastevere"), std::string::npos);
}

TEST(ExpertTurn, UnknownToolReportedOnceThenAborts) {
  Harness h({{AgentRole::HotelExpert, "restaurant_search(Rome)"}, {AgentRole::HotelExpert, "restaurant_search(Rome)"}});
  auto turn = expert_turn(make_agent_spec(AgentRole::HotelExpert, h.prompts), h.state, fixture_sandbox(), h.ctx);
  EXPECT_EQ(turn.status, TurnStatus::unknown_tool_abort);
  EXPECT_EQ(turn.failed_calls.size(), 1u);
  EXPECT_NE(turn.message.find("Sorry"), std::string::npos);
  EXPECT_TRUE(h.state.notebook().empty());
  EXPECT_EQ(h.state.conversation().size(), 1u);
}

TEST(ExpertTurn, UnknownToolThenRecovery) {
  Harness h({{AgentRole::HotelExpert, "restaurant_search(Rome)"},
             {AgentRole::HotelExpert, "hotel_search(Rome)"},
             {AgentRole::HotelExpert, "ok"}});
  auto turn = expert_turn(make_agent_spec(AgentRole::HotelExpert, h.prompts), h.state, fixture_sandbox(), h.ctx);
  EXPECT_EQ(turn.status, TurnStatus::completed);
  EXPECT_EQ(turn.entries.size(), 1u);
}

TEST(ExpertTurn, RoundCapEndsTheTurn) {
  testing::Script script;
  for (int i = 0; i < 4; ++i) script.push_back({AgentRole::HotelExpert, "hotel_search(Rome)"});
  Harness h(script);
  auto turn = expert_turn(make_agent_spec(AgentRole::HotelExpert, h.prompts), h.state, fixture_sandbox(), h.ctx, 2);
  EXPECT_EQ(turn.status, TurnStatus::round_cap_exceeded);
  EXPECT_EQ(turn.entries.size(), 2u);
  EXPECT_EQ(turn.model_calls, 3);
  EXPECT_EQ(h.state.conversation().size(), 1u);
  EXPECT_FALSE(h.state.acting_role());
}

TEST(ExpertTurn, WrongArityIsAPrivateError) {
  Harness h({{AgentRole::TransportExpert, "flight_search(New York, London)"}, {AgentRole::TransportExpert, "hm"}});
  auto turn = expert_turn(make_agent_spec(AgentRole::TransportExpert, h.prompts), h.state, fixture_sandbox(), h.ctx);
  EXPECT_TRUE(turn.entries.empty());
  ASSERT_EQ(turn.failed_calls.size(), 1u);
  EXPECT_NE(turn.failed_calls[0].error.find("expects 3"), std::string::npos);
}

TEST(ExpertTurn, RejectsNonExperts) {
  Harness h({});
  EXPECT_THROW(expert_turn(make_agent_spec(AgentRole::PlanCritic, h.prompts), h.state, fixture_sandbox(), h.ctx),
               ProtocolError);
}

const std::vector<AgentRole> kRoster(kExpertOrder.begin(), kExpertOrder.end());

TEST(Orchestrator, ParsesReflectionAndNext) {
  auto d = parse_orchestrator_reply("REFLECTION: budget unresolved. NEXT: TransportExpert", kRoster);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->chosen, AgentRole::TransportExpert);
  EXPECT_EQ(d->reflection, "budget unresolved.");
  EXPECT_EQ(parse_orchestrator_reply("NEXT: FINISH", kRoster)->chosen, AgentRole::PlanSummarizer);
  EXPECT_EQ(parse_orchestrator_reply("Reflection: x\nNext: **HotelExpert**", kRoster)->chosen, AgentRole::HotelExpert);
  EXPECT_FALSE(parse_orchestrator_reply("I think the hotel expert", kRoster));
  EXPECT_FALSE(parse_orchestrator_reply("NEXT: Orchestrator", kRoster));
  EXPECT_FALSE(parse_orchestrator_reply("NEXT: PlanCritic", kRoster));
}

TEST(Orchestrator, FixedOrderSuccessorTable) {
  EXPECT_EQ(fixed_order_successor(std::nullopt), AgentRole::TransportExpert);
  EXPECT_EQ(fixed_order_successor(AgentRole::TransportExpert), AgentRole::HotelExpert);
  EXPECT_EQ(fixed_order_successor(AgentRole::HotelExpert), AgentRole::RestaurantExpert);
  EXPECT_EQ(fixed_order_successor(AgentRole::RestaurantExpert), AgentRole::AttractionExpert);
  EXPECT_EQ(fixed_order_successor(AgentRole::AttractionExpert), AgentRole::PlanSummarizer);
}

TEST(Orchestrator, DecidesFromScriptedReply) {
  Harness h({{AgentRole::Orchestrator, "REFLECTION: budget unresolved. NEXT: TransportExpert"}});
  auto d = orchestrator_decide(h.state.observe(AgentRole::Orchestrator), kRoster, h.ctx);
  EXPECT_EQ(d.chosen, AgentRole::TransportExpert);
  EXPECT_EQ(d.attempts, 1);
  EXPECT_FALSE(d.fallback);
}

TEST(Orchestrator, GarbageTwiceFallsBackToSuccessor) {
  Harness h({{AgentRole::Orchestrator, "garbage"}, {AgentRole::Orchestrator, "more garbage"}});
  h.state.append_message(AgentRole::TransportExpert, "flights");
  h.state.append_message(AgentRole::HotelExpert, "hotels");
  auto d = orchestrator_decide(h.state.observe(AgentRole::Orchestrator), kRoster, h.ctx);
  EXPECT_EQ(d.chosen, AgentRole::RestaurantExpert);
  EXPECT_TRUE(d.fallback);
  EXPECT_EQ(d.attempts, 2);
}

TEST(Orchestrator, RetrySucceeds) {
  Harness h({{AgentRole::Orchestrator, "garbage"}, {AgentRole::Orchestrator, "NEXT: FINISH"}});
  auto d = orchestrator_decide(h.state.observe(AgentRole::Orchestrator), kRoster, h.ctx);
  EXPECT_EQ(d.chosen, AgentRole::PlanSummarizer);
  EXPECT_EQ(d.attempts, 2);
  EXPECT_FALSE(d.fallback);
}

TEST(Orchestrator, RefusesNotebookView) {
  Harness h({{AgentRole::Orchestrator, "NEXT: FINISH"}});
  EXPECT_THROW(orchestrator_decide(h.state.observe(AgentRole::PlanCompiler), kRoster, h.ctx), ProtocolError);
}

NotebookEntry entry_of(WorldState& w, AgentRole who, const std::string& tool, std::vector<std::string> args) {
  auto out = invoke_tool(fixture_sandbox(), tool, args);
  return w.notebook_write(who, {tool, std::move(args)}, out.records, fixture_sandbox());
}

TEST(Summarizer, EmptyNotebookMarker) {
  auto brief = summarize_for_planner(base_goal(), Notebook{});
  EXPECT_EQ(brief, "Travel request:\n" + base_goal().query_text + "\n\nPlanning brief: (no gathered evidence)\n");
}

TEST(Summarizer, VerbatimFlightNumber) {
  WorldState w(base_goal());
  entry_of(w, AgentRole::TransportExpert, "flight_search", {"New York", "London", "2022-10-01"});
  auto brief = summarize_for_planner(w.goal(), w.notebook());
  EXPECT_NE(brief.find("F1001"), std::string::npos);
  EXPECT_NE(brief.find("F1002"), std::string::npos);
}

TEST(Summarizer, GroupsByDomainStably) {
  WorldState w(base_goal());
  entry_of(w, AgentRole::HotelExpert, "hotel_search", {"London"});
  entry_of(w, AgentRole::TransportExpert, "flight_search", {"London", "New York", "2022-10-03"});
  entry_of(w, AgentRole::HotelExpert, "hotel_search", {"Rome"});
  auto brief = summarize_for_planner(w.goal(), w.notebook());
  EXPECT_EQ(brief, summarize_for_planner(w.goal(), w.notebook()));
  auto tpos = brief.find("== transportation ==");
  auto hpos = brief.find("== hotel ==");
  ASSERT_NE(tpos, std::string::npos);
  ASSERT_NE(hpos, std::string::npos);
  EXPECT_LT(tpos, hpos);
  EXPECT_LT(brief.find("Entry 1 by HotelExpert: hotel_search(London)"),
            brief.find("Entry 3 by HotelExpert: hotel_search(Rome)"));
  const std::string golden_head =
      "Travel request:\n" + base_goal().query_text +
      "\n\nPlanning brief: evidence gathered by the experts\n\n== transportation ==\n"
      "Entry 2 by TransportExpert: flight_search(London, New York, 2022-10-03)\n"
      "  1. Flight Number: F1003 | From: London | To: New York | Date: 2022-10-03 | Departure: 10:00 | Arrival: 13:00 "
      "| Duration: 480 min | Price: 450.00\n";
  EXPECT_EQ(brief.substr(0, golden_head.size()), golden_head);
  for (const auto& e : w.notebook().entries())
    for (const auto& r : e.records) EXPECT_NE(brief.find(record_name(r)), std::string::npos);
}

TEST(Compiler, ReturnsReplyVerbatim) {
  Harness h({{AgentRole::PlanCompiler, testing::base_plan_text()}, {AgentRole::PlanCompiler, "no plan here"}});
  auto obs = h.state.observe(AgentRole::PlanCompiler);
  auto text = compile_plan("brief", obs, h.ctx);
  EXPECT_EQ(text, testing::base_plan_text());
  EXPECT_TRUE(parse_plan(text));
  auto raw = compile_plan("brief", obs, h.ctx);
  EXPECT_EQ(raw, "no plan here");
  EXPECT_FALSE(parse_plan(raw));
  EXPECT_THROW(compile_plan("brief", h.state.observe(AgentRole::PlanCritic), h.ctx), ProtocolError);
}

TEST(Critic, ZeroRoundsIsIdentity) {
  Harness h({});
  auto out = critic_refine("PLAN", "brief", h.state, h.ctx, 0, 10);
  EXPECT_EQ(out.final_plan, "PLAN");
  EXPECT_EQ(out.critic_messages, 0);
  EXPECT_TRUE(h.state.conversation().empty());
}

TEST(Critic, ImmediateApproval) {
  Harness h({{AgentRole::PlanCritic, "APPROVED"}});
  auto out = critic_refine("PLAN", "brief", h.state, h.ctx, 3, 10);
  EXPECT_EQ(out.final_plan, "PLAN");
  EXPECT_EQ(out.critic_messages, 1);
  EXPECT_TRUE(out.approved);
  EXPECT_EQ(h.state.conversation().size(), 1u);
}

TEST(Critic, OneRevisionThenApproval) {
  Harness h({{AgentRole::PlanCritic, "ISSUES: budget exceeded by 120."},
             {AgentRole::PlanCompiler, "REVISED PLAN"},
             {AgentRole::PlanCritic, "Approved."}});
  auto out = critic_refine("PLAN", "brief", h.state, h.ctx, 3, 10);
  EXPECT_EQ(out.final_plan, "REVISED PLAN");
  EXPECT_EQ(out.critic_messages, 2);
  EXPECT_EQ(out.revisions, 1);
  std::vector<AgentRole> authors;
  for (const auto& m : h.state.conversation().messages()) authors.push_back(m.author);
  EXPECT_EQ(authors, (std::vector<AgentRole>{AgentRole::PlanCritic, AgentRole::PlanCompiler, AgentRole::PlanCritic}));
}

TEST(Critic, StopsAtMaxRoundsAndBudget) {
  Harness h({{AgentRole::PlanCritic, "ISSUES: a"}, {AgentRole::PlanCompiler, "P2"}, {AgentRole::PlanCritic, "ISSUES: b"},
             {AgentRole::PlanCompiler, "P3"}});
  auto out = critic_refine("P1", "brief", h.state, h.ctx, 2, 10);
  EXPECT_EQ(out.final_plan, "P3");
  EXPECT_FALSE(out.approved);

  Harness tight({{AgentRole::PlanCritic, "ISSUES: a"}, {AgentRole::PlanCompiler, "P2"}});
  auto cut = critic_refine("P1", "brief", tight.state, tight.ctx, 3, 1);
  EXPECT_TRUE(cut.cut_off);
  EXPECT_EQ(cut.final_plan, "P1");
  EXPECT_EQ(tight.state.conversation().size(), 1u);
}

TEST(Critic, ApprovalToken) {
  EXPECT_TRUE(is_approval("APPROVED"));
  EXPECT_TRUE(is_approval("**Approved** - looks good"));
  EXPECT_FALSE(is_approval("ISSUES: approved hotels are too expensive"));
  EXPECT_FALSE(is_approval("APPROVEDISH"));
}

TEST(SingleAgent, ToolLoopThenPlan) {
  Harness h({{AgentRole::SingleAgent, "hotel_search(London)\nflight_search(New York, London, 2022-10-01)"},
             {AgentRole::SingleAgent, "Thinking..."},
             {AgentRole::SingleAgent, testing::base_plan_text()}});
  auto run = single_agent_run(make_agent_spec(AgentRole::SingleAgent, h.prompts), h.state, fixture_sandbox(), h.ctx, 10);
  ASSERT_TRUE(run.plan_text);
  EXPECT_EQ(run.model_calls, 3);
  EXPECT_EQ(run.rounds[0].returns.size(), 2u);
  EXPECT_TRUE(h.state.notebook().empty());
  ASSERT_EQ(h.state.conversation().size(), 1u);
  EXPECT_EQ(h.state.conversation().messages()[0].author, AgentRole::SingleAgent);
}

TEST(SingleAgent, StepLimitWithoutPlan) {
  testing::Script script;
  for (int i = 0; i < 5; ++i) script.push_back({AgentRole::SingleAgent, "hotel_search(London)"});
  Harness h(script);
  auto run = single_agent_run(make_agent_spec(AgentRole::SingleAgent, h.prompts), h.state, fixture_sandbox(), h.ctx, 4);
  EXPECT_FALSE(run.plan_text);
  EXPECT_EQ(run.model_calls, 4);
  EXPECT_TRUE(h.state.conversation().empty());
}

}  // namespace
}  // namespace travelmas
