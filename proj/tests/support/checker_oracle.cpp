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

// Brute-force reference checker. It scans the raw tables linearly and parses
// plan fields with its own string code so that a bug shared with the
// evaluator's helpers cannot hide.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>

#include "test_support.hpp"

namespace travelmas::testing {

namespace {

std::string low(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string strip(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

bool empty_field(const std::string& v) {
  auto t = strip(v);
  return t.empty() || t == "-";
}

struct Ent {
  std::string name;  // lowered
  std::string city;  // lowered, may be empty
};

std::optional<Ent> ent(const std::string& v) {
  if (empty_field(v)) return std::nullopt;
  auto t = strip(v);
  auto k = t.find_last_of(',');
  if (k == std::string::npos) return Ent{low(t), ""};
  return Ent{low(t.substr(0, k)), low(t.substr(k + 1))};
}

std::vector<Ent> ents(const std::string& v) {
  std::vector<Ent> out;
  if (empty_field(v)) return out;
  std::string piece;
  for (std::size_t i = 0; i <= v.size(); ++i) {
    if (i == v.size() || v[i] == ';') {
      if (auto e = ent(piece)) out.push_back(*e);
      piece.clear();
    } else {
      piece += v[i];
    }
  }
  return out;
}

struct Cities {
  bool known = false;
  bool moving = false;
  std::string a, b;
};

Cities cities(const std::string& v) {
  Cities c;
  if (empty_field(v)) return c;
  c.known = true;
  auto t = low(strip(v));
  if (t.rfind("from ", 0) == 0) {
    auto k = t.find(" to ", 5);
    if (k != std::string::npos && k > 5 && k + 4 < t.size()) {
      c.moving = true;
      c.a = low(t.substr(5, k - 5));
      c.b = low(t.substr(k + 4));
      return c;
    }
  }
  c.a = c.b = t;
  return c;
}

struct Fl {
  std::string number;  // lowered
  std::string a, b;    // lowered legs, empty when absent
};

std::optional<Fl> flight(const std::string& v) {
  if (empty_field(v)) return std::nullopt;
  auto t = strip(v);
  if (low(t).rfind("flight number:", 0) != 0) return std::nullopt;
  auto rest = t.substr(14);
  auto comma = rest.find(',');
  Fl f;
  f.number = low(rest.substr(0, comma));
  if (f.number.empty()) return std::nullopt;
  if (comma != std::string::npos) {
    auto c = cities(rest.substr(comma + 1));
    if (c.moving) {
      f.a = c.a;
      f.b = c.b;
    }
  }
  return f;
}

const FlightRecord* raw_flight(const Sandbox& sb, const std::string& number, const std::string& date) {
  for (const auto& f : sb.flights())
    if (low(f.flight_number) == number && f.date.to_string() == date) return &f;
  return nullptr;
}

bool any_flight(const Sandbox& sb, const std::string& number) {
  return std::any_of(sb.flights().begin(), sb.flights().end(),
                     [&](const auto& f) { return low(f.flight_number) == number; });
}

template <typename Rows>
bool any_named(const Rows& rows, const std::string& name) {
  return std::any_of(rows.begin(), rows.end(), [&](const auto& r) { return low(r.name) == name; });
}

template <typename Rows>
auto located(const Rows& rows, const Ent& e) -> decltype(&rows.front()) {
  for (const auto& r : rows)
    if (low(r.name) == e.name && low(r.city) == e.city) return &r;
  return nullptr;
}

std::string date_of(const Goal& g, int day) {
  if (day < 1 || day > static_cast<int>(g.metadata.dates.size())) return "";
  return g.metadata.dates[day - 1].to_string();
}

}  // namespace

double oracle_cost(const Plan& plan, const Sandbox& sb, const Goal& goal) {
  const int people = goal.metadata.travelers;
  double total = 0;
  for (const auto& d : plan.days) {
    if (auto f = flight(d.transportation))
      if (const auto* row = raw_flight(sb, f->number, date_of(goal, d.day))) total += row->price * people;
    for (const auto* meal : {&d.breakfast, &d.lunch, &d.dinner})
      if (auto e = ent(*meal))
        if (const auto* r = located(sb.restaurants(), *e)) total += r->average_cost * people;
    if (auto e = ent(d.accommodation))
      if (const auto* h = located(sb.hotels(), *e)) {
        int rooms = 0;
        while (rooms * h->maximum_occupancy < people) ++rooms;
        total += h->price_per_night * rooms;
      }
  }
  return total;
}

std::map<std::string, bool> oracle_verdicts(const Plan& plan, const Sandbox& sb, const Goal& goal) {
  const auto& meta = goal.metadata;
  const int n = static_cast<int>(plan.days.size());
  std::map<std::string, bool> v;

  // Within sandbox.
  bool grounded = true;
  for (const auto& d : plan.days) {
    if (auto f = flight(d.transportation)) grounded &= any_flight(sb, f->number);
    for (const auto* meal : {&d.breakfast, &d.lunch, &d.dinner})
      if (auto e = ent(*meal)) grounded &= any_named(sb.restaurants(), e->name);
    for (const auto& e : ents(d.attraction)) grounded &= any_named(sb.attractions(), e.name);
    if (auto e = ent(d.accommodation)) grounded &= any_named(sb.hotels(), e->name);
  }
  v[std::string(category::kWithinSandbox)] = grounded;

  // Complete information.
  bool complete = n == meta.duration_days;
  for (const auto& d : plan.days) {
    auto c = cities(d.current_city);
    if (!c.known) complete = false;
    if (c.moving && empty_field(d.transportation)) complete = false;
    if (d.day != n && empty_field(d.accommodation)) complete = false;
    if (c.known && !c.moving && (empty_field(d.lunch) || empty_field(d.dinner))) complete = false;
  }
  v[std::string(category::kCompleteInformation)] = complete;

  // Within current city.
  bool in_city = true;
  for (const auto& d : plan.days) {
    auto c = cities(d.current_city);
    if (!c.known) continue;
    auto visit = [&](const std::optional<Ent>& e, bool hotel, bool exists, bool found) {
      if (!e) return;
      if (e->city.empty()) {
        in_city = false;
        return;
      }
      bool here = hotel ? e->city == c.b : (e->city == c.a || e->city == c.b);
      if (!here || (exists && !found)) in_city = false;
    };
    for (const auto* meal : {&d.breakfast, &d.lunch, &d.dinner}) {
      auto e = ent(*meal);
      if (e) visit(e, false, any_named(sb.restaurants(), e->name), located(sb.restaurants(), *e) != nullptr);
    }
    for (const auto& e : ents(d.attraction))
      visit(e, false, any_named(sb.attractions(), e.name), located(sb.attractions(), e) != nullptr);
    auto h = ent(d.accommodation);
    if (h) visit(h, true, any_named(sb.hotels(), h->name), located(sb.hotels(), *h) != nullptr);
  }
  v[std::string(category::kWithinCurrentCity)] = in_city;

  // Reasonable route.
  bool route = true;
  std::vector<std::string> path;
  std::string last_end;
  bool have_end = false;
  for (const auto& d : plan.days) {
    auto c = cities(d.current_city);
    if (!c.known) continue;
    if (have_end && last_end != c.a) route = false;
    path.push_back(c.a);
    path.push_back(c.b);
    last_end = c.b;
    have_end = true;
  }
  auto origin = low(meta.origin);
  if (path.empty() || path.front() != origin || path.back() != origin) route = false;
  std::set<std::string> visited;
  for (const auto& p : path)
    if (p != origin) visited.insert(p);
  if (meta.visiting_city_number == 1) {
    if (visited.size() != 1 || *visited.begin() != low(meta.destination)) route = false;
  } else if (static_cast<int>(visited.size()) != meta.visiting_city_number) {
    route = false;
  }
  v[std::string(category::kReasonableCityRoute)] = route;

  // Diversity, by name and city.
  std::map<std::string, int> rest_seen, attr_seen;
  for (const auto& d : plan.days) {
    for (const auto* meal : {&d.breakfast, &d.lunch, &d.dinner})
      if (auto e = ent(*meal)) ++rest_seen[e->name + "@" + e->city];
    for (const auto& e : ents(d.attraction)) ++attr_seen[e.name + "@" + e.city];
  }
  auto all_once = [](const std::map<std::string, int>& m) {
    return std::all_of(m.begin(), m.end(), [](const auto& kv) { return kv.second == 1; });
  };
  v[std::string(category::kDiverseRestaurants)] = all_once(rest_seen);
  v[std::string(category::kDiverseAttractions)] = all_once(attr_seen);

  // Transportation consistency.
  bool consistent = true;
  for (const auto& d : plan.days) {
    if (empty_field(d.transportation)) continue;
    auto f = flight(d.transportation);
    auto c = cities(d.current_city);
    if (!f || !c.moving) {
      consistent = false;
      continue;
    }
    if (!f->a.empty() && (f->a != c.a || f->b != c.b)) consistent = false;
    if (!any_flight(sb, f->number)) continue;
    const auto* row = raw_flight(sb, f->number, date_of(goal, d.day));
    if (!row || low(row->origin_city) != c.a || low(row->destination_city) != c.b) consistent = false;
  }
  v[std::string(category::kTransportationConsistency)] = consistent;

  // Accommodation rules.
  bool rules = n == 0 || empty_field(plan.days.back().accommodation);
  for (int i = 0; i < n;) {
    auto e = ent(plan.days[i].accommodation);
    if (!e) {
      ++i;
      continue;
    }
    int j = i + 1;
    while (j < n) {
      auto next = ent(plan.days[j].accommodation);
      if (!next || next->name != e->name || next->city != e->city || plan.days[j].day != plan.days[j - 1].day + 1)
        break;
      ++j;
    }
    if (const auto* h = located(sb.hotels(), *e)) {
      if (j - i < h->minimum_nights) rules = false;
      if (meta.travelers > h->maximum_occupancy) rules = false;
    }
    i = j;
  }
  v[std::string(category::kAccommodationRules)] = rules;

  // Hard constraints.
  const auto& want = meta.constraints;
  v[std::string(category::kBudget)] = !meta.budget || oracle_cost(plan, sb, goal) <= *meta.budget + 1e-6;

  bool room_type = true, room_rule = true;
  for (const auto& d : plan.days) {
    auto e = ent(d.accommodation);
    if (!e) continue;
    const auto* h = located(sb.hotels(), *e);
    if (want.room_type) {
      if (!h) {
        room_type = false;
      } else {
        auto t = low(h->room_type);
        auto w = low(*want.room_type);
        bool ok = w == "not shared room"  ? t != "shared room"
                  : w == "entire room"    ? (t == "entire home/apt" || t == "entire room")
                                          : t == w;
        room_type &= ok;
      }
    }
    if (want.house_rule) {
      if (!h) {
        room_rule = false;
      } else {
        for (const auto& r : h->house_rules)
          if (low(r) == "no " + low(*want.house_rule)) room_rule = false;
      }
    }
  }
  v[std::string(category::kRoomType)] = room_type;
  v[std::string(category::kRoomRule)] = room_rule;

  bool cuisine = true;
  for (const auto& c : want.cuisines) {
    bool served = false;
    for (const auto& d : plan.days)
      for (const auto* meal : {&d.breakfast, &d.lunch, &d.dinner})
        if (auto e = ent(*meal))
          if (const auto* r = located(sb.restaurants(), *e))
            for (const auto& rc : r->cuisines) served |= low(rc) == low(c);
    cuisine &= served;
  }
  v[std::string(category::kCuisine)] = cuisine;

  bool transport = true;
  if (want.transportation) {
    auto w = low(*want.transportation);
    for (const auto& d : plan.days) {
      if (empty_field(d.transportation)) continue;
      auto t = low(d.transportation);
      if (w == "no flight" && t.find("flight") != std::string::npos) transport = false;
      if (w == "no self-driving" && t.find("self-driving") != std::string::npos) transport = false;
    }
  }
  v[std::string(category::kTransportationPreference)] = transport;
  return v;
}

}  // namespace travelmas::testing
