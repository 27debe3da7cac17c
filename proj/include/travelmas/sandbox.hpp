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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "travelmas/calendar.hpp"

namespace travelmas {

enum class EntityKind { flight, hotel, restaurant, attraction, city };

std::string_view to_string(EntityKind kind);
std::optional<EntityKind> parse_entity_kind(std::string_view text);

struct FlightRecord {
  std::string flight_number;
  std::string origin_city;
  std::string destination_city;
  ClockTime departure_time;
  ClockTime arrival_time;
  int duration_min = 0;
  double price = 0.0;  // per person
  Date date;

  bool operator==(const FlightRecord&) const = default;
};

struct HotelRecord {
  std::string name;
  std::string city;
  double price_per_night = 0.0;
  std::string room_type;
  std::vector<std::string> house_rules;
  int minimum_nights = 1;
  int maximum_occupancy = 1;

  bool operator==(const HotelRecord&) const = default;
};

struct RestaurantRecord {
  std::string name;
  std::string city;
  std::vector<std::string> cuisines;
  double average_cost = 0.0;  // per person
  double rating = 0.0;

  bool operator==(const RestaurantRecord&) const = default;
};

struct AttractionRecord {
  std::string name;
  std::string city;
  std::string address;

  bool operator==(const AttractionRecord&) const = default;
};

/// One row returned by a retrieval tool.
using Record = std::variant<FlightRecord, HotelRecord, RestaurantRecord, AttractionRecord>;

EntityKind record_kind(const Record& record);

/// The grounding name of a record: flight number for flights, name otherwise.
const std::string& record_name(const Record& record);

/// Every string-valued field of a record (names, cities, rules, cuisines).
std::vector<std::string> record_strings(const Record& record);

/// Field-by-field rendering with the exact names and numbers.
std::string render_record(const Record& record);

nlohmann::json record_to_json(const Record& record);
Record record_from_json(const nlohmann::json& j);

struct TableCounts {
  std::size_t flights = 0;
  std::size_t hotels = 0;
  std::size_t restaurants = 0;
  std::size_t attractions = 0;
  std::size_t cities = 0;

  bool operator==(const TableCounts&) const = default;
};

/// Immutable, indexed travel database. All queries are pure reads and may be
/// issued concurrently.
class Sandbox {
 public:
  Sandbox() = default;

  /// Loads flights.csv, hotels.csv, restaurants.csv and attractions.csv from
  /// `dir`. Either every row parses or the whole load throws LoadError.
  static Sandbox load(const std::filesystem::path& dir);

  /// Builds a sandbox from in-memory rows, with the same validation as load().
  static Sandbox from_records(std::vector<FlightRecord> flights, std::vector<HotelRecord> hotels,
                              std::vector<RestaurantRecord> restaurants,
                              std::vector<AttractionRecord> attractions);

  /// Flights matching all three keys, ordered by departure time then flight
  /// number. Unknown cities and unparseable dates give an empty result.
  std::vector<FlightRecord> flight_search(std::string_view origin, std::string_view destination,
                                          std::string_view date) const;
  std::vector<HotelRecord> hotel_search(std::string_view city) const;
  std::vector<RestaurantRecord> restaurant_search(std::string_view city) const;
  std::vector<AttractionRecord> attraction_search(std::string_view city) const;

  /// Case-insensitive, whitespace-normalized exact name lookup.
  bool entity_exists(EntityKind kind, std::string_view name) const;

  std::vector<const FlightRecord*> flights_by_number(std::string_view flight_number) const;
  const FlightRecord* find_flight(std::string_view flight_number, const Date& date) const;
  const HotelRecord* find_hotel(std::string_view name, std::string_view city) const;
  const RestaurantRecord* find_restaurant(std::string_view name, std::string_view city) const;
  const AttractionRecord* find_attraction(std::string_view name, std::string_view city) const;

  const std::vector<FlightRecord>& flights() const { return flights_; }
  const std::vector<HotelRecord>& hotels() const { return hotels_; }
  const std::vector<RestaurantRecord>& restaurants() const { return restaurants_; }
  const std::vector<AttractionRecord>& attractions() const { return attractions_; }

  /// Normalized names of every city that appears in any table.
  const std::set<std::string>& city_set() const { return cities_; }
  TableCounts counts() const;

 private:
  using Index = std::unordered_map<std::string, std::vector<std::size_t>>;

  void build_indices();

  std::vector<FlightRecord> flights_;
  std::vector<HotelRecord> hotels_;
  std::vector<RestaurantRecord> restaurants_;
  std::vector<AttractionRecord> attractions_;

  std::set<std::string> cities_;
  Index flights_by_route_;  // origin|destination|date
  Index flights_by_number_;
  Index hotels_by_city_, restaurants_by_city_, attractions_by_city_;
  Index hotels_by_name_, restaurants_by_name_, attractions_by_name_;
};

// Retrieval tools as the experts see them. The restaurant tool keeps the
// `resturant_search` spelling used by the expert prompts.
inline constexpr std::string_view kFlightSearch = "flight_search";
inline constexpr std::string_view kHotelSearch = "hotel_search";
inline constexpr std::string_view kRestaurantSearch = "resturant_search";
inline constexpr std::string_view kAttractionSearch = "attraction_search";

struct ToolSignature {
  std::string name;
  std::vector<std::string> parameters;
  EntityKind returns;
};

const std::vector<ToolSignature>& tool_signatures();
const ToolSignature* find_tool(std::string_view name);

struct ToolOutcome {
  bool ok = true;
  std::vector<Record> records;
  std::string error;  // set when !ok (unknown tool, wrong arity)
};

ToolOutcome invoke_tool(const Sandbox& sandbox, std::string_view tool, const std::vector<std::string>& args);

}  // namespace travelmas
