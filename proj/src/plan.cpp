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

#include "travelmas/plan.hpp"

#include <array>

#include <nlohmann/json.hpp>

#include "travelmas/common.hpp"

namespace travelmas {

using nlohmann::json;

namespace {

struct FieldKey {
  std::string_view label;
  std::string ItineraryDay::*member;
};

const std::array<FieldKey, 7> kFields{{
    {"Current City", &ItineraryDay::current_city},
    {"Transportation", &ItineraryDay::transportation},
    {"Breakfast", &ItineraryDay::breakfast},
    {"Attraction", &ItineraryDay::attraction},
    {"Lunch", &ItineraryDay::lunch},
    {"Dinner", &ItineraryDay::dinner},
    {"Accommodation", &ItineraryDay::accommodation},
}};

// Removes heading marks, list bullets and a leading bold marker.
std::string_view strip_decoration(std::string_view line, bool* bold) {
  line = trim_view(line);
  while (!line.empty() && line.front() == '#') line.remove_prefix(1);
  line = trim_view(line);
  if (line.size() >= 2 && (line[0] == '-' || line[0] == '*') && line[1] == ' ') line = trim_view(line.substr(2));
  *bold = false;
  if (line.size() >= 2 && line.substr(0, 2) == "**") {
    line.remove_prefix(2);
    *bold = true;
  }
  return line;
}

// "Day N:" with nothing else on the line.
std::optional<int> day_header(std::string_view line, bool bold) {
  if (!starts_with_icase(line, "day")) return std::nullopt;
  line.remove_prefix(3);
  line = trim_view(line);
  std::size_t digits = 0;
  while (digits < line.size() && line[digits] >= '0' && line[digits] <= '9') ++digits;
  if (digits == 0 || digits > 6) return std::nullopt;
  int n = 0;
  for (std::size_t i = 0; i < digits; ++i) n = n * 10 + (line[i] - '0');
  auto rest = trim_view(line.substr(digits));
  if (bold && rest.size() >= 2 && rest.substr(rest.size() - 2) == "**") rest = trim_view(rest.substr(0, rest.size() - 2));
  if (rest == ":") return n;
  if (bold && rest == "**:") return n;
  return std::nullopt;
}

struct KeyLine {
  std::string ItineraryDay::*member;
  std::string value;
};

std::optional<KeyLine> key_line(std::string_view line, bool bold) {
  for (const auto& f : kFields) {
    if (!starts_with_icase(line, f.label)) continue;
    auto rest = line.substr(f.label.size());
    if (bold && rest.substr(0, 2) == "**") rest.remove_prefix(2);
    if (rest.empty() || rest.front() != ':') continue;
    rest.remove_prefix(1);
    if (bold && rest.substr(0, 2) == "**") rest.remove_prefix(2);
    auto value = trim_view(rest);
    return KeyLine{f.member, value.empty() ? std::string("-") : std::string(value)};
  }
  return std::nullopt;
}

struct Block {
  std::vector<ItineraryDay> days;
  std::vector<bool> has_field;
  bool broken = false;

  bool well_formed() const {
    if (broken || days.empty()) return false;
    for (bool b : has_field)
      if (!b) return false;
    return true;
  }
};

}  // namespace

PlanParse parse_plan(std::string_view text) {
  std::optional<Block> current;
  std::optional<Block> best;
  bool saw_header = false;

  auto close = [&] {
    if (current && current->well_formed()) best = std::move(current);
    current.reset();
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    bool bold = false;
    auto line = strip_decoration(raw, &bold);
    if (line.empty()) continue;

    if (auto n = day_header(line, bold)) {
      saw_header = true;
      if (*n == 1) {
        close();
        current = Block{};
        current->days.push_back(ItineraryDay{});
        current->has_field.push_back(false);
      } else if (current && !current->broken && *n == static_cast<int>(current->days.size()) + 1) {
        ItineraryDay d;
        d.day = *n;
        current->days.push_back(d);
        current->has_field.push_back(false);
      } else if (current) {
        current->broken = true;
      }
      continue;
    }
    if (!current || current->broken) continue;
    if (auto kv = key_line(line, bold)) {
      auto& day = current->days.back();
      if (!current->has_field.back() || day.*(kv->member) == "-") day.*(kv->member) = std::move(kv->value);
      current->has_field.back() = true;
    }
  }
  close();

  PlanParse out;
  if (best) {
    Plan p;
    p.days = std::move(best->days);
    p.raw_text = std::string(text);
    out.plan = std::move(p);
  } else {
    out.error = saw_header ? "no well-formed plan block (day headers must run 1..N, each with fields)"
                           : "no plan block found";
  }
  return out;
}

std::string serialize_plan(const Plan& plan) {
  std::string out;
  for (std::size_t i = 0; i < plan.days.size(); ++i) {
    const auto& d = plan.days[i];
    if (i) out += '\n';
    out += "Day " + std::to_string(d.day) + ":\n";
    for (const auto& f : kFields) {
      const auto& v = d.*(f.member);
      out += std::string(f.label) + ": " + (v.empty() ? std::string("-") : v) + "\n";
    }
  }
  return out;
}

json plan_to_json(const Plan& plan) {
  json days = json::array();
  for (const auto& d : plan.days) {
    json j{{"day", d.day}};
    for (const auto& f : kFields) j[std::string(f.label)] = d.*(f.member);
    days.push_back(j);
  }
  return {{"days", days}};
}

Plan plan_from_json(const json& j) {
  Plan p;
  for (const auto& dj : j.at("days")) {
    ItineraryDay d;
    d.day = dj.at("day").get<int>();
    for (const auto& f : kFields) d.*(f.member) = dj.value(std::string(f.label), std::string("-"));
    p.days.push_back(std::move(d));
  }
  return p;
}

// ---------------------------------------------------------------------------

bool is_blank(std::string_view value) {
  auto t = trim_view(value);
  return t.empty() || t == "-";
}

std::optional<EntityRef> parse_entity(std::string_view value) {
  if (is_blank(value)) return std::nullopt;
  auto t = trim_view(value);
  auto comma = t.rfind(',');
  if (comma == std::string_view::npos) return EntityRef{std::string(t), {}};
  return EntityRef{trim(t.substr(0, comma)), trim(t.substr(comma + 1))};
}

std::vector<EntityRef> parse_entity_list(std::string_view value) {
  std::vector<EntityRef> out;
  if (is_blank(value)) return out;
  for (const auto& piece : split_list(value, ';'))
    if (auto e = parse_entity(piece)) out.push_back(std::move(*e));
  return out;
}

std::optional<CityStop> parse_current_city(std::string_view value) {
  if (is_blank(value)) return std::nullopt;
  auto t = trim_view(value);
  if (starts_with_icase(t, "from ")) {
    auto rest = t.substr(5);
    auto lower = to_lower(rest);
    auto sep = lower.find(" to ");
    if (sep != std::string::npos) {
      CityStop s{trim(rest.substr(0, sep)), trim(rest.substr(sep + 4)), true};
      if (!s.from.empty() && !s.to.empty()) return s;
    }
  }
  return CityStop{std::string(t), std::string(t), false};
}

std::optional<FlightRef> parse_flight(std::string_view value) {
  if (is_blank(value)) return std::nullopt;
  auto t = trim_view(value);
  if (!starts_with_icase(t, "flight number:")) return std::nullopt;
  t = trim_view(t.substr(14));
  FlightRef ref;
  auto comma = t.find(',');
  ref.flight_number = trim(t.substr(0, comma));
  if (ref.flight_number.empty()) return std::nullopt;
  if (comma != std::string_view::npos) {
    if (auto stop = parse_current_city(trim_view(t.substr(comma + 1))); stop && stop->transition) {
      ref.from = stop->from;
      ref.to = stop->to;
    }
  }
  return ref;
}

}  // namespace travelmas
