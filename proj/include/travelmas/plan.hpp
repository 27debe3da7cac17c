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
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace travelmas {

/// One itinerary day in the evaluator's canonical schema. Every field holds
/// either its value or "-".
struct ItineraryDay {
  int day = 1;
  std::string current_city = "-";    // "City" or "from A to B"
  std::string transportation = "-";  // "Flight Number: F123, from A to B"
  std::string breakfast = "-";       // "Name, City"
  std::string attraction = "-";      // "Name, City;Name, City"
  std::string lunch = "-";
  std::string dinner = "-";
  std::string accommodation = "-";

  bool operator==(const ItineraryDay&) const = default;
};

struct Plan {
  std::vector<ItineraryDay> days;
  std::string raw_text;  // source the plan was parsed from; not part of equality

  bool operator==(const Plan& other) const { return days == other.days; }
};

struct PlanParse {
  std::optional<Plan> plan;
  std::string error;

  explicit operator bool() const { return plan.has_value(); }
};

/// Extracts the last well-formed plan block. A block starts at a "Day 1:"
/// header and needs contiguous day headers, each followed by at least one
/// "Key: value" line. Missing fields become "-". Never throws.
PlanParse parse_plan(std::string_view text);

/// Canonical text; parse_plan(serialize_plan(p)) == p.
std::string serialize_plan(const Plan& plan);

nlohmann::json plan_to_json(const Plan& plan);
Plan plan_from_json(const nlohmann::json& j);

// Field-level helpers shared by the evaluator.

bool is_blank(std::string_view value);

struct EntityRef {
  std::string name;
  std::string city;  // empty when the value had no comma
};

/// "Name, City" split on the last comma; nullopt for "-".
std::optional<EntityRef> parse_entity(std::string_view value);

/// `;`-separated attraction list.
std::vector<EntityRef> parse_entity_list(std::string_view value);

struct CityStop {
  std::string from;
  std::string to;  // equals `from` when the day has no transition
  bool transition = false;
};

/// "City" or "from A to B"; nullopt for "-".
std::optional<CityStop> parse_current_city(std::string_view value);

struct FlightRef {
  std::string flight_number;
  std::string from;
  std::string to;
};

/// "Flight Number: F123, from A to B"; nullopt for "-" or any other mode.
std::optional<FlightRef> parse_flight(std::string_view value);

}  // namespace travelmas
