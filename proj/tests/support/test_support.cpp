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

#include "test_support.hpp"

#include <atomic>
#include <fstream>
#include <functional>

#include <unistd.h>

namespace travelmas::testing {

namespace fs = std::filesystem;
namespace cat = category;

fs::path data_path(const std::string& rel) {
  fs::path p(TRAVELMAS_DATA_DIR);
  return rel.empty() ? p : p / rel;
}

const Sandbox& fixture_sandbox() {
  static const Sandbox sb = Sandbox::load(data_path("sandbox"));
  return sb;
}

const std::vector<Goal>& fixture_tasks() {
  static const std::vector<Goal> tasks = load_tasks(data_path("tasks.jsonl"));
  return tasks;
}

const Goal& fixture_task(const std::string& id) {
  for (const auto& g : fixture_tasks())
    if (g.task_id == id) return g;
  throw Error("no fixture task " + id);
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("travelmas-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

std::vector<llm::CassetteEntry> to_cassette(const Script& script) {
  std::vector<llm::CassetteEntry> out;
  for (const auto& [role, text] : script) out.push_back({std::string(to_string(role)), "", text});
  return out;
}

std::unique_ptr<llm::ScriptedBackend> scripted(const Script& script) {
  return std::make_unique<llm::ScriptedBackend>(to_cassette(script));
}

Goal base_goal() {
  Goal g;
  g.task_id = "base";
  g.query_text = "Please plan a 3-day trip for 1 person from New York to London, from October 1 to October 3, 2022, "
                 "with a budget of $1,500.";
  auto& m = g.metadata;
  m.origin = "New York";
  m.destination = "London";
  m.visiting_city_number = 1;
  m.duration_days = 3;
  m.travelers = 1;
  m.budget = 1500;
  auto d0 = *Date::parse("2022-10-01");
  m.dates = {d0, d0.plus_days(1), d0.plus_days(2)};
  return g;
}

Plan base_plan() {
  Plan p;
  ItineraryDay d1;
  d1.day = 1;
  d1.current_city = "from New York to London";
  d1.transportation = "Flight Number: F1002, from New York to London";
  d1.attraction = "British Museum, London";
  d1.dinner = "The Thames Grill, London";
  d1.accommodation = "Kensington Garden Flat, London";

  ItineraryDay d2;
  d2.day = 2;
  d2.current_city = "London";
  d2.breakfast = "Borough Bites, London";
  d2.attraction = "Tower of London, London;Hyde Park, London";
  d2.lunch = "Golden Dragon, London";
  d2.dinner = "Mr Toasties, London";
  d2.accommodation = "Kensington Garden Flat, London";

  ItineraryDay d3;
  d3.day = 3;
  d3.current_city = "from London to New York";
  d3.transportation = "Flight Number: F1004, from London to New York";

  p.days = {d1, d2, d3};
  return p;
}

std::string base_plan_text() { return "Here is the plan.\n\n" + serialize_plan(base_plan()); }

namespace {

GoldenCase make_case(std::string name, std::set<std::string> failing, const std::function<void(Plan&)>& edit_plan = {},
                     const std::function<void(Goal&)>& edit_goal = {}) {
  GoldenCase c{std::move(name), base_goal(), base_plan(), {}};
  if (edit_plan) edit_plan(c.plan);
  if (edit_goal) edit_goal(c.goal);
  for (auto& f : failing) c.failing.insert(f);
  return c;
}

std::string s(std::string_view v) { return std::string(v); }

}  // namespace

const std::vector<GoldenCase>& golden_cases() {
  static const std::vector<GoldenCase> cases = [] {
    std::vector<GoldenCase> v;
    v.push_back(make_case("base plan passes everything", {}));
    v.push_back(make_case("fabricated hotel", {s(cat::kWithinSandbox)}, [](Plan& p) {
      p.days[0].accommodation = "Ritz Imaginary, London";
      p.days[1].accommodation = "Ritz Imaginary, London";
    }));
    v.push_back(make_case("restaurant repeated at two meals", {s(cat::kDiverseRestaurants)},
                          [](Plan& p) { p.days[1].dinner = "The Thames Grill, London"; }));
    v.push_back(make_case("attraction repeated", {s(cat::kDiverseAttractions)},
                          [](Plan& p) { p.days[1].attraction = "Tower of London, London;British Museum, London"; }));
    v.push_back(make_case("fabricated flight number", {s(cat::kWithinSandbox)},
                          [](Plan& p) { p.days[0].transportation = "Flight Number: F9999, from New York to London"; }));
    v.push_back(make_case("flight on the wrong date and route", {s(cat::kTransportationConsistency)},
                          [](Plan& p) { p.days[0].transportation = "Flight Number: F1003, from New York to London"; }));
    v.push_back(make_case("flight from the next day", {s(cat::kTransportationConsistency)},
                          [](Plan& p) { p.days[0].transportation = "Flight Number: F1007, from New York to London"; }));
    v.push_back(make_case("missing lunch on a stay day", {s(cat::kCompleteInformation)},
                          [](Plan& p) { p.days[1].lunch = "-"; }));
    v.push_back(make_case("missing first night", {s(cat::kCompleteInformation)},
                          [](Plan& p) { p.days[0].accommodation = "-"; }));
    v.push_back(make_case("plan one day short",
                          {s(cat::kCompleteInformation), s(cat::kReasonableCityRoute), s(cat::kAccommodationRules)},
                          [](Plan& p) { p.days.pop_back(); }));
    v.push_back(make_case("hotel on the last day", {s(cat::kAccommodationRules), s(cat::kWithinCurrentCity)},
                          [](Plan& p) { p.days[2].accommodation = "Kensington Garden Flat, London"; }));
    v.push_back(make_case("lunch in another city", {s(cat::kWithinCurrentCity)},
                          [](Plan& p) { p.days[1].lunch = "Trattoria Da Enzo, Rome"; }));
    v.push_back(make_case("restaurant given the wrong city", {s(cat::kWithinCurrentCity)},
                          [](Plan& p) { p.days[1].lunch = "Golden Dragon, Rome"; }));
    v.push_back(make_case("restaurant without a city", {s(cat::kWithinCurrentCity)},
                          [](Plan& p) { p.days[1].lunch = "Golden Dragon"; }));
    v.push_back(make_case("teleport to Rome", {s(cat::kReasonableCityRoute), s(cat::kWithinCurrentCity)},
                          [](Plan& p) { p.days[1].current_city = "Rome"; }));
    v.push_back(make_case("over budget", {s(cat::kBudget)}, {}, [](Goal& g) { g.metadata.budget = 1200; }));
    v.push_back(make_case("budget met exactly", {}, {}, [](Goal& g) { g.metadata.budget = 1235; }));
    v.push_back(make_case("entire room requested", {}, {},
                          [](Goal& g) { g.metadata.constraints.room_type = "entire room"; }));
    v.push_back(make_case("private room requested", {s(cat::kRoomType)}, {},
                          [](Goal& g) { g.metadata.constraints.room_type = "private room"; }));
    v.push_back(make_case("not shared room requested", {}, {},
                          [](Goal& g) { g.metadata.constraints.room_type = "not shared room"; }));
    v.push_back(make_case("smoking requested at a no-smoking flat", {s(cat::kRoomRule)}, {},
                          [](Goal& g) { g.metadata.constraints.house_rule = "smoking"; }));
    v.push_back(make_case("pets requested, flat allows them", {}, {},
                          [](Goal& g) { g.metadata.constraints.house_rule = "pets"; }));
    v.push_back(make_case("vegetarian requested and served", {}, {},
                          [](Goal& g) { g.metadata.constraints.cuisines = {"Vegetarian"}; }));
    v.push_back(make_case("italian requested, never served", {s(cat::kCuisine)}, {},
                          [](Goal& g) { g.metadata.constraints.cuisines = {"Italian"}; }));
    v.push_back(make_case("two cuisines both served", {}, {},
                          [](Goal& g) { g.metadata.constraints.cuisines = {"Chinese", "Cafe"}; }));
    v.push_back(make_case("no flight requested", {s(cat::kTransportationPreference)}, {},
                          [](Goal& g) { g.metadata.constraints.transportation = "no flight"; }));
    v.push_back(make_case("no self-driving requested", {}, {},
                          [](Goal& g) { g.metadata.constraints.transportation = "no self-driving"; }));
    v.push_back(make_case("party exceeds occupancy", {s(cat::kAccommodationRules)}, {}, [](Goal& g) {
      g.metadata.travelers = 3;
      g.metadata.budget = 5000;
    }));
    v.push_back(make_case("one night where two are required", {s(cat::kAccommodationRules)},
                          [](Plan& p) { p.days[0].accommodation = "Southwark Rooms, London"; }));
    v.push_back(make_case("two nights meet the minimum", {}, [](Plan& p) {
      p.days[0].accommodation = "Southwark Rooms, London";
      p.days[1].accommodation = "Southwark Rooms, London";
    }));
    v.push_back(make_case("self-driving instead of a flight", {s(cat::kTransportationConsistency)},
                          [](Plan& p) { p.days[0].transportation = "Self-driving, from New York to London"; }));
    v.push_back(make_case("flight legs disagree with the day", {s(cat::kTransportationConsistency)},
                          [](Plan& p) { p.days[0].transportation = "Flight Number: F1002, from London to Rome"; }));
    v.push_back(make_case("flight on a stay day", {s(cat::kTransportationConsistency)},
                          [](Plan& p) { p.days[1].transportation = "Flight Number: F1002, from New York to London"; }));
    v.push_back(make_case("first day without a city",
                          {s(cat::kCompleteInformation), s(cat::kReasonableCityRoute),
                           s(cat::kTransportationConsistency)},
                          [](Plan& p) { p.days[0].current_city = "-"; }));
    v.push_back(make_case("case and spacing differ from the tables", {}, [](Plan& p) {
      p.days[0].accommodation = "  kensington   garden FLAT , london";
      p.days[1].accommodation = "Kensington Garden Flat, LONDON";
      p.days[1].lunch = "golden dragon,London ";
    }));
    v.push_back(make_case("real attraction placed in the wrong city", {s(cat::kWithinCurrentCity)},
                          [](Plan& p) { p.days[1].attraction = "Tower of London, London;Colosseum, London"; }));
    v.push_back(make_case("two cities required, one visited", {s(cat::kReasonableCityRoute)}, {},
                          [](Goal& g) { g.metadata.visiting_city_number = 2; }));
    v.push_back(make_case("shared loft when a shared room is ruled out", {s(cat::kRoomType)},
                          [](Plan& p) {
                            p.days[0].accommodation = "Camden Shared Loft, London";
                            p.days[1].accommodation = "Camden Shared Loft, London";
                          },
                          [](Goal& g) { g.metadata.constraints.room_type = "not shared room"; }));
    v.push_back(make_case("fabricated restaurants and hotel", {s(cat::kWithinSandbox)}, [](Plan& p) {
      p.days[1].lunch = "Invented Noodles, London";
      p.days[1].dinner = "Phantom Bistro, London";
      p.days[1].accommodation = "Ghost Inn, London";
    }));
    return v;
  }();
  return cases;
}

std::set<std::string> failed_names(const std::vector<ConstraintResult>& commonsense,
                                   const std::vector<ConstraintResult>& hard) {
  std::set<std::string> out;
  for (const auto* list : {&commonsense, &hard})
    for (const auto& r : *list)
      if (!r.passed) out.insert(r.name);
  return out;
}

// ---------------------------------------------------------------------------

Plan random_plan(std::mt19937_64& rng, int days) {
  static const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 ,;:-*#/()'&.\xc3\xa9";
  auto word = [&] {
    std::uniform_int_distribution<int> len(1, 24);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::string w;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
      char c = alphabet[pick(rng)];
      // Keep multibyte sequences whole.
      if (c == '\xc3' || c == '\xa9') {
        w += "\xc3\xa9";
        continue;
      }
      w += c;
    }
    w = trim(w);
    return w.empty() ? std::string("x") : w;
  };
  std::bernoulli_distribution dash(0.3);
  auto field = [&] { return dash(rng) ? std::string("-") : word(); };
  Plan p;
  for (int d = 1; d <= days; ++d) {
    ItineraryDay day;
    day.day = d;
    day.current_city = field();
    day.transportation = field();
    day.breakfast = field();
    day.attraction = field();
    day.lunch = field();
    day.dinner = field();
    day.accommodation = field();
    p.days.push_back(std::move(day));
  }
  return p;
}

}  // namespace travelmas::testing
