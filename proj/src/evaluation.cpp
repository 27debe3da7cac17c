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

#include "travelmas/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "travelmas/common.hpp"

namespace travelmas {

using nlohmann::json;

std::string_view to_string(ConstraintKind kind) {
  return kind == ConstraintKind::commonsense ? "commonsense" : "hard";
}

std::string_view to_string(Area area) {
  switch (area) {
    case Area::Hotel: return "Hotel";
    case Area::Restaurant: return "Restaurant";
    case Area::Attraction: return "Attraction";
    case Area::Transportation: return "Transportation";
    case Area::Other: return "Other";
  }
  return "Other";
}

std::optional<ConstraintKind> parse_constraint_kind(std::string_view text) {
  if (text == "commonsense") return ConstraintKind::commonsense;
  if (text == "hard") return ConstraintKind::hard;
  return std::nullopt;
}

std::optional<Area> parse_area(std::string_view text) {
  for (auto a : kAreas)
    if (to_string(a) == text) return a;
  return std::nullopt;
}

const std::vector<CategoryArea>& category_area_table() {
  static const std::vector<CategoryArea> table{
      {"Accommodation Rules", Area::Hotel},
      {"City Valid - Accommodation", Area::Hotel},
      {"Room Rule Compliance", Area::Hotel},
      {"Room Type Preferences", Area::Hotel},
      {"Budget/Cost Compliance", Area::Hotel},
      {"City Valid - Restaurant (Breakfast/Lunch/Dinner)", Area::Restaurant},
      {"Diverse Restaurants", Area::Restaurant},
      {"Cuisine Preferences", Area::Restaurant},
      {"City Valid - Attraction", Area::Attraction},
      {"Diverse Attractions", Area::Attraction},
      {"Within Current City", Area::Attraction},
      {"Within Sandbox (No Hallucination)", Area::Attraction},
      {"Complete Information", Area::Attraction},
      {"City Valid - Transportation", Area::Transportation},
      {"Reasonable City Route", Area::Transportation},
      {"Transportation Consistency", Area::Transportation},
  };
  return table;
}

Area area_of(std::string_view name) {
  for (const auto& row : category_area_table())
    if (row.category == name) return row.area;
  return Area::Other;
}

// ---------------------------------------------------------------------------

namespace {

struct DayCities {
  bool known = false;
  bool transition = false;
  std::string start;  // normalized
  std::string end;
  std::string from_raw, to_raw;
};

DayCities day_cities(const ItineraryDay& d) {
  DayCities c;
  if (auto stop = parse_current_city(d.current_city)) {
    c.known = true;
    c.transition = stop->transition;
    c.start = normalize_name(stop->from);
    c.end = normalize_name(stop->to);
    c.from_raw = stop->from;
    c.to_raw = stop->to;
  }
  return c;
}

std::optional<Date> day_date(const Goal& goal, int day) {
  const auto& dates = goal.metadata.dates;
  if (day < 1 || day > static_cast<int>(dates.size())) return std::nullopt;
  return dates[day - 1];
}

std::string where(int day, std::string_view field) { return "day " + std::to_string(day) + " " + std::string(field); }

ConstraintResult make_result(std::string_view name, ConstraintKind kind, std::vector<std::string> violations,
                             std::string pass_detail = "ok") {
  ConstraintResult r;
  r.name = std::string(name);
  r.kind = kind;
  r.area = area_of(name);
  r.passed = violations.empty();
  r.detail = r.passed ? std::move(pass_detail) : join(violations, "; ");
  r.violations = std::move(violations);
  return r;
}

bool is_meal(std::string_view field) { return field == "breakfast" || field == "lunch" || field == "dinner"; }

const HotelRecord* hotel_of(const Sandbox& sb, const PlanMention& m) { return sb.find_hotel(m.name, m.city); }

// --- commonsense -----------------------------------------------------------

ConstraintResult within_sandbox(const Plan& plan, const Sandbox& sb) {
  std::vector<std::string> v;
  for (const auto& m : collect_mentions(plan))
    if (!sb.entity_exists(m.kind, m.name))
      v.push_back(where(m.day, m.field) + ": " + std::string(to_string(m.kind)) + " '" + m.name + "' not in sandbox");
  return make_result(category::kWithinSandbox, ConstraintKind::commonsense, std::move(v));
}

ConstraintResult complete_information(const Plan& plan, const Goal& goal) {
  std::vector<std::string> v;
  int n = static_cast<int>(plan.days.size());
  if (n != goal.metadata.duration_days)
    v.push_back("plan has " + std::to_string(n) + " days, task needs " + std::to_string(goal.metadata.duration_days));
  for (const auto& d : plan.days) {
    auto c = day_cities(d);
    if (!c.known) v.push_back(where(d.day, "current city") + " missing");
    if (c.transition && is_blank(d.transportation)) v.push_back(where(d.day, "transportation") + " missing");
    if (d.day < n && is_blank(d.accommodation)) v.push_back(where(d.day, "accommodation") + " missing");
    if (c.known && !c.transition) {
      if (is_blank(d.lunch)) v.push_back(where(d.day, "lunch") + " missing");
      if (is_blank(d.dinner)) v.push_back(where(d.day, "dinner") + " missing");
    }
  }
  return make_result(category::kCompleteInformation, ConstraintKind::commonsense, std::move(v));
}

ConstraintResult within_current_city(const Plan& plan, const Sandbox& sb) {
  std::vector<std::string> v;
  std::map<int, DayCities> cities;
  for (const auto& d : plan.days) cities[d.day] = day_cities(d);
  for (const auto& m : collect_mentions(plan)) {
    if (m.kind == EntityKind::flight) continue;
    const auto& c = cities[m.day];
    if (!c.known) continue;
    auto loc = where(m.day, m.field);
    if (m.city.empty()) {
      v.push_back(loc + ": '" + m.name + "' has no city");
      continue;
    }
    auto city = normalize_name(m.city);
    bool ok = m.kind == EntityKind::hotel ? city == c.end : (city == c.start || city == c.end);
    if (!ok) {
      v.push_back(loc + ": '" + m.name + "' is in " + m.city + ", not the day's city");
      continue;
    }
    if (!sb.entity_exists(m.kind, m.name)) continue;
    bool located = false;
    switch (m.kind) {
      case EntityKind::hotel: located = sb.find_hotel(m.name, m.city) != nullptr; break;
      case EntityKind::restaurant: located = sb.find_restaurant(m.name, m.city) != nullptr; break;
      case EntityKind::attraction: located = sb.find_attraction(m.name, m.city) != nullptr; break;
      default: located = true;
    }
    if (!located) v.push_back(loc + ": '" + m.name + "' is not located in " + m.city);
  }
  return make_result(category::kWithinCurrentCity, ConstraintKind::commonsense, std::move(v));
}

ConstraintResult reasonable_city_route(const Plan& plan, const Goal& goal) {
  std::vector<std::string> v;
  std::vector<std::string> stops;
  std::optional<std::string> prev_end;
  for (const auto& d : plan.days) {
    auto c = day_cities(d);
    if (!c.known) continue;
    if (prev_end && *prev_end != c.start)
      v.push_back("day " + std::to_string(d.day) + " starts in " + c.from_raw + " but the previous day ended in " +
                  *prev_end);
    for (const auto* city : {&c.start, &c.end})
      if (stops.empty() || stops.back() != *city) stops.push_back(*city);
    prev_end = c.end;
  }
  auto origin = normalize_name(goal.metadata.origin);
  if (stops.empty()) {
    v.push_back("no cities in plan");
  } else {
    if (stops.front() != origin) v.push_back("route starts in " + stops.front() + ", not the origin " + origin);
    if (stops.back() != origin) v.push_back("route ends in " + stops.back() + ", not the origin " + origin);
    std::set<std::string> visited;
    for (const auto& s : stops)
      if (s != origin) visited.insert(s);
    int want = goal.metadata.visiting_city_number;
    auto dest = normalize_name(goal.metadata.destination);
    if (want == 1) {
      if (visited != std::set<std::string>{dest}) v.push_back("route must visit exactly the destination " + dest);
    } else if (static_cast<int>(visited.size()) != want) {
      v.push_back("route visits " + std::to_string(visited.size()) + " cities, task needs " + std::to_string(want));
    }
  }
  return make_result(category::kReasonableCityRoute, ConstraintKind::commonsense, std::move(v));
}

ConstraintResult diverse(const Plan& plan, bool restaurants) {
  std::vector<std::string> v;
  std::set<std::string> seen;
  for (const auto& m : collect_mentions(plan)) {
    if (restaurants ? m.kind != EntityKind::restaurant : m.kind != EntityKind::attraction) continue;
    auto key = normalize_name(m.name) + "|" + normalize_name(m.city);
    if (!seen.insert(key).second) v.push_back(where(m.day, m.field) + ": '" + m.name + "' repeated");
  }
  return make_result(restaurants ? category::kDiverseRestaurants : category::kDiverseAttractions,
                     ConstraintKind::commonsense, std::move(v));
}

ConstraintResult transportation_consistency(const Plan& plan, const Sandbox& sb, const Goal& goal) {
  std::vector<std::string> v;
  for (const auto& d : plan.days) {
    if (is_blank(d.transportation)) continue;
    auto loc = where(d.day, "transportation");
    auto ref = parse_flight(d.transportation);
    if (!ref) {
      v.push_back(loc + ": unsupported mode '" + trim(d.transportation) + "'");
      continue;
    }
    auto c = day_cities(d);
    if (!c.transition) {
      v.push_back(loc + ": flight " + ref->flight_number + " on a day without a city change");
      continue;
    }
    if (!ref->from.empty() && (normalize_name(ref->from) != c.start || normalize_name(ref->to) != c.end))
      v.push_back(loc + ": flight leg " + ref->from + " -> " + ref->to + " does not match the day's route");
    if (!sb.entity_exists(EntityKind::flight, ref->flight_number)) continue;
    auto date = day_date(goal, d.day);
    const FlightRecord* f = date ? sb.find_flight(ref->flight_number, *date) : nullptr;
    if (!f) {
      v.push_back(loc + ": flight " + ref->flight_number + " does not operate on " +
                  (date ? date->to_string() : std::string("that day")));
      continue;
    }
    if (normalize_name(f->origin_city) != c.start || normalize_name(f->destination_city) != c.end)
      v.push_back(loc + ": flight " + ref->flight_number + " flies " + f->origin_city + " -> " + f->destination_city);
  }
  return make_result(category::kTransportationConsistency, ConstraintKind::commonsense, std::move(v));
}

ConstraintResult accommodation_rules(const Plan& plan, const Sandbox& sb, const Goal& goal) {
  std::vector<std::string> v;
  if (!plan.days.empty() && !is_blank(plan.days.back().accommodation))
    v.push_back(where(plan.days.back().day, "accommodation") + ": hotel booked on the last day");

  std::vector<PlanMention> stays;
  for (const auto& m : collect_mentions(plan))
    if (m.kind == EntityKind::hotel) stays.push_back(m);
  for (std::size_t i = 0; i < stays.size();) {
    std::size_t j = i + 1;
    auto key = normalize_name(stays[i].name) + "|" + normalize_name(stays[i].city);
    while (j < stays.size() && stays[j].day == stays[j - 1].day + 1 &&
           normalize_name(stays[j].name) + "|" + normalize_name(stays[j].city) == key)
      ++j;
    if (const auto* h = hotel_of(sb, stays[i])) {
      int nights = static_cast<int>(j - i);
      if (nights < h->minimum_nights)
        v.push_back(where(stays[i].day, "accommodation") + ": " + std::to_string(nights) + " night(s) at '" + h->name +
                    "', minimum is " + std::to_string(h->minimum_nights));
      if (goal.metadata.travelers > h->maximum_occupancy)
        v.push_back(where(stays[i].day, "accommodation") + ": party of " + std::to_string(goal.metadata.travelers) +
                    " exceeds occupancy " + std::to_string(h->maximum_occupancy) + " at '" + h->name + "'");
    }
    i = j;
  }
  return make_result(category::kAccommodationRules, ConstraintKind::commonsense, std::move(v));
}

// --- hard ------------------------------------------------------------------

ConstraintResult not_requested(std::string_view name) {
  return make_result(name, ConstraintKind::hard, {}, "not requested");
}

bool room_type_matches(std::string_view requested, std::string_view actual) {
  auto req = normalize_name(requested);
  auto got = normalize_name(actual);
  if (req == "not shared room") return got != "shared room";
  if (req == "entire room") return got == "entire home/apt" || got == "entire room";
  return req == got;
}

}  // namespace

std::vector<PlanMention> collect_mentions(const Plan& plan) {
  std::vector<PlanMention> out;
  auto add = [&](int day, std::string_view field, EntityKind kind, const EntityRef& e) {
    out.push_back({day, std::string(field), kind, e.name, e.city});
  };
  for (const auto& d : plan.days) {
    if (auto f = parse_flight(d.transportation)) out.push_back({d.day, "transportation", EntityKind::flight, f->flight_number, ""});
    if (auto e = parse_entity(d.breakfast)) add(d.day, "breakfast", EntityKind::restaurant, *e);
    for (const auto& e : parse_entity_list(d.attraction)) add(d.day, "attraction", EntityKind::attraction, e);
    if (auto e = parse_entity(d.lunch)) add(d.day, "lunch", EntityKind::restaurant, *e);
    if (auto e = parse_entity(d.dinner)) add(d.day, "dinner", EntityKind::restaurant, *e);
    if (auto e = parse_entity(d.accommodation)) add(d.day, "accommodation", EntityKind::hotel, *e);
  }
  return out;
}

std::vector<ConstraintResult> check_commonsense(const Plan& plan, const Sandbox& sandbox, const Goal& goal) {
  return {within_sandbox(plan, sandbox),
          complete_information(plan, goal),
          within_current_city(plan, sandbox),
          reasonable_city_route(plan, goal),
          diverse(plan, true),
          diverse(plan, false),
          transportation_consistency(plan, sandbox, goal),
          accommodation_rules(plan, sandbox, goal)};
}

CostBreakdown plan_cost(const Plan& plan, const Sandbox& sandbox, const Goal& goal) {
  CostBreakdown cost;
  const double people = goal.metadata.travelers;
  for (const auto& m : collect_mentions(plan)) {
    auto loc = where(m.day, m.field);
    if (m.kind == EntityKind::flight) {
      auto date = day_date(goal, m.day);
      const auto* f = date ? sandbox.find_flight(m.name, *date) : nullptr;
      if (f)
        cost.flights += f->price * people;
      else
        cost.unpriced.push_back(loc);
    } else if (m.kind == EntityKind::hotel) {
      if (const auto* h = hotel_of(sandbox, m)) {
        int occupancy = std::max(1, h->maximum_occupancy);
        int rooms = (goal.metadata.travelers + occupancy - 1) / occupancy;
        cost.accommodation += h->price_per_night * rooms;
      } else {
        cost.unpriced.push_back(loc);
      }
    } else if (m.kind == EntityKind::restaurant && is_meal(m.field)) {
      if (const auto* r = sandbox.find_restaurant(m.name, m.city))
        cost.meals += r->average_cost * people;
      else
        cost.unpriced.push_back(loc);
    }
  }
  return cost;
}

std::vector<ConstraintResult> check_hard(const Plan& plan, const Sandbox& sandbox, const Goal& goal) {
  const auto& spec = goal.metadata.constraints;
  std::vector<ConstraintResult> out;
  auto mentions = collect_mentions(plan);

  if (!goal.metadata.budget) {
    out.push_back(not_requested(category::kBudget));
  } else {
    auto cost = plan_cost(plan, sandbox, goal);
    double budget = *goal.metadata.budget;
    std::vector<std::string> v;
    // Cents-level slack so sums of two-decimal prices compare as written.
    if (cost.total() > budget + 1e-6)
      v.push_back("total " + format_fixed2(cost.total()) + " exceeds budget " + format_fixed2(budget));
    out.push_back(make_result(category::kBudget, ConstraintKind::hard, std::move(v),
                              "total " + format_fixed2(cost.total()) + " within budget " + format_fixed2(budget)));
  }

  if (!spec.room_type) {
    out.push_back(not_requested(category::kRoomType));
  } else {
    std::vector<std::string> v;
    for (const auto& m : mentions) {
      if (m.kind != EntityKind::hotel) continue;
      const auto* h = hotel_of(sandbox, m);
      if (!h)
        v.push_back(where(m.day, m.field) + ": unknown hotel '" + m.name + "'");
      else if (!room_type_matches(*spec.room_type, h->room_type))
        v.push_back(where(m.day, m.field) + ": '" + h->name + "' offers " + h->room_type + ", wanted " + *spec.room_type);
    }
    out.push_back(make_result(category::kRoomType, ConstraintKind::hard, std::move(v)));
  }

  if (!spec.house_rule) {
    out.push_back(not_requested(category::kRoomRule));
  } else {
    std::vector<std::string> v;
    auto forbidden = normalize_name("No " + *spec.house_rule);
    for (const auto& m : mentions) {
      if (m.kind != EntityKind::hotel) continue;
      const auto* h = hotel_of(sandbox, m);
      if (!h) {
        v.push_back(where(m.day, m.field) + ": unknown hotel '" + m.name + "'");
        continue;
      }
      for (const auto& rule : h->house_rules)
        if (normalize_name(rule) == forbidden) v.push_back(where(m.day, m.field) + ": '" + h->name + "' has rule " + rule);
    }
    out.push_back(make_result(category::kRoomRule, ConstraintKind::hard, std::move(v)));
  }

  if (spec.cuisines.empty()) {
    out.push_back(not_requested(category::kCuisine));
  } else {
    std::set<std::string> served;
    for (const auto& m : mentions) {
      if (m.kind != EntityKind::restaurant || !is_meal(m.field)) continue;
      if (const auto* r = sandbox.find_restaurant(m.name, m.city))
        for (const auto& c : r->cuisines) served.insert(normalize_name(c));
    }
    std::vector<std::string> v;
    for (const auto& want : spec.cuisines)
      if (!served.count(normalize_name(want))) v.push_back("no " + want + " restaurant in the plan");
    out.push_back(make_result(category::kCuisine, ConstraintKind::hard, std::move(v)));
  }

  if (!spec.transportation) {
    out.push_back(not_requested(category::kTransportationPreference));
  } else {
    std::vector<std::string> v;
    auto pref = normalize_name(*spec.transportation);
    for (const auto& d : plan.days) {
      if (is_blank(d.transportation)) continue;
      auto t = to_lower(d.transportation);
      bool flight = parse_flight(d.transportation).has_value() || t.find("flight") != std::string::npos;
      bool driving = t.find("self-driving") != std::string::npos;
      if ((pref == "no flight" && flight) || (pref == "no self-driving" && driving))
        v.push_back(where(d.day, "transportation") + ": '" + trim(d.transportation) + "' violates " + *spec.transportation);
    }
    out.push_back(make_result(category::kTransportationPreference, ConstraintKind::hard, std::move(v)));
  }
  return out;
}

// ---------------------------------------------------------------------------

bool TaskEvaluation::commonsense_pass() const {
  return delivered && std::all_of(commonsense.begin(), commonsense.end(), [](const auto& r) { return r.passed; });
}

bool TaskEvaluation::hard_pass() const {
  return delivered && std::all_of(hard.begin(), hard.end(), [](const auto& r) { return r.passed; });
}

TaskEvaluation evaluate_task(const Goal& goal, const std::optional<Plan>& plan, const Sandbox& sandbox) {
  TaskEvaluation e;
  e.task_id = goal.task_id;
  e.plan = plan;
  if (plan) {
    e.delivered = true;
    e.commonsense = check_commonsense(*plan, sandbox, goal);
    e.hard = check_hard(*plan, sandbox, goal);
    return e;
  }
  // Same result shape as a delivered task, every constraint failed.
  Plan empty;
  for (auto r : check_commonsense(empty, sandbox, goal)) {
    r.passed = false;
    r.detail = "no plan delivered";
    r.violations = {r.detail};
    e.commonsense.push_back(std::move(r));
  }
  for (auto r : check_hard(empty, sandbox, goal)) {
    r.passed = false;
    r.detail = "no plan delivered";
    r.violations = {r.detail};
    e.hard.push_back(std::move(r));
  }
  return e;
}

std::array<double, 6> metric_values(const BenchmarkMetrics& m) {
  return {m.delivery_rate, m.commonsense_micro, m.commonsense_macro, m.hard_micro, m.hard_macro, m.final_pass_rate};
}

BenchmarkMetrics compute_metrics(std::span<const TaskEvaluation> evals, MetricOptions options) {
  if (evals.empty()) throw Error("cannot compute metrics over zero tasks");
  std::size_t delivered = 0, cs_macro = 0, hard_macro = 0, final_pass = 0;
  std::size_t cs_pass = 0, cs_total = 0, hard_pass = 0, hard_total = 0;
  for (const auto& e : evals) {
    if (e.delivered) ++delivered;
    if (e.commonsense_pass()) ++cs_macro;
    if (e.hard_pass()) ++hard_macro;
    if (e.final_pass()) ++final_pass;
    if (!e.delivered && !options.include_undelivered_in_micro) continue;
    for (const auto& r : e.commonsense) {
      ++cs_total;
      if (e.delivered && r.passed) ++cs_pass;
    }
    for (const auto& r : e.hard) {
      ++hard_total;
      if (e.delivered && r.passed) ++hard_pass;
    }
  }
  auto pct = [](std::size_t num, std::size_t den) { return den ? 100.0 * static_cast<double>(num) / den : 0.0; };
  BenchmarkMetrics m;
  m.tasks = evals.size();
  m.delivery_rate = pct(delivered, evals.size());
  m.commonsense_micro = pct(cs_pass, cs_total);
  m.commonsense_macro = pct(cs_macro, evals.size());
  m.hard_micro = pct(hard_pass, hard_total);
  m.hard_macro = pct(hard_macro, evals.size());
  m.final_pass_rate = pct(final_pass, evals.size());
  return m;
}

std::vector<AreaFailure> categorize_failures(std::span<const TaskEvaluation> evals) {
  std::vector<AreaFailure> rows;
  for (auto a : kAreas) rows.push_back({a});
  auto row = [&](Area a) -> AreaFailure& { return rows[static_cast<std::size_t>(a)]; };
  for (const auto& e : evals) {
    for (const auto* list : {&e.commonsense, &e.hard}) {
      for (const auto& r : *list) {
        auto& f = row(r.area);
        ++f.total;
        if (!r.passed) ++f.failed;
      }
    }
  }
  for (auto& f : rows) f.percent = f.total ? 100.0 * static_cast<double>(f.failed) / f.total : 0.0;
  return rows;
}

HallucinationCounts count_hallucinations(std::span<const TaskEvaluation> evals, const Sandbox& sandbox) {
  HallucinationCounts c;
  for (const auto& e : evals) {
    if (!e.plan) continue;
    for (const auto& m : collect_mentions(*e.plan)) {
      if (sandbox.entity_exists(m.kind, m.name)) continue;
      switch (m.kind) {
        case EntityKind::flight: ++c.flights; break;
        case EntityKind::hotel: ++c.hotels; break;
        case EntityKind::restaurant: ++c.restaurants; break;
        case EntityKind::attraction: ++c.attractions; break;
        case EntityKind::city: break;
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------

json constraint_to_json(const ConstraintResult& r) {
  return {{"name", r.name},     {"kind", to_string(r.kind)}, {"area", to_string(r.area)},
          {"passed", r.passed}, {"detail", r.detail},        {"violations", r.violations}};
}

ConstraintResult constraint_from_json(const json& j) {
  ConstraintResult r;
  r.name = j.at("name").get<std::string>();
  auto kind = parse_constraint_kind(j.at("kind").get<std::string>());
  auto area = parse_area(j.at("area").get<std::string>());
  if (!kind || !area) throw Error("bad constraint record for '" + r.name + "'");
  r.kind = *kind;
  r.area = *area;
  r.passed = j.at("passed").get<bool>();
  r.detail = j.value("detail", std::string{});
  r.violations = j.value("violations", std::vector<std::string>{});
  return r;
}

json metrics_to_json(const BenchmarkMetrics& m) {
  json j{{"tasks", m.tasks}};
  auto values = metric_values(m);
  for (std::size_t i = 0; i < kMetricNames.size(); ++i) j[std::string(kMetricNames[i])] = values[i];
  return j;
}

BenchmarkMetrics metrics_from_json(const json& j) {
  BenchmarkMetrics m;
  m.tasks = j.at("tasks").get<std::size_t>();
  double* fields[] = {&m.delivery_rate, &m.commonsense_micro, &m.commonsense_macro,
                      &m.hard_micro,    &m.hard_macro,        &m.final_pass_rate};
  for (std::size_t i = 0; i < kMetricNames.size(); ++i) *fields[i] = j.at(std::string(kMetricNames[i])).get<double>();
  return m;
}

}  // namespace travelmas
