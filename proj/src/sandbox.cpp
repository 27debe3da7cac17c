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

#include "travelmas/sandbox.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "travelmas/common.hpp"

namespace travelmas {

using nlohmann::json;

std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::flight: return "flight";
    case EntityKind::hotel: return "hotel";
    case EntityKind::restaurant: return "restaurant";
    case EntityKind::attraction: return "attraction";
    case EntityKind::city: return "city";
  }
  return "unknown";
}

std::optional<EntityKind> parse_entity_kind(std::string_view text) {
  auto t = normalize_name(text);
  if (t == "flight") return EntityKind::flight;
  if (t == "hotel") return EntityKind::hotel;
  if (t == "restaurant") return EntityKind::restaurant;
  if (t == "attraction") return EntityKind::attraction;
  if (t == "city") return EntityKind::city;
  return std::nullopt;
}

EntityKind record_kind(const Record& record) {
  switch (record.index()) {
    case 0: return EntityKind::flight;
    case 1: return EntityKind::hotel;
    case 2: return EntityKind::restaurant;
    default: return EntityKind::attraction;
  }
}

const std::string& record_name(const Record& record) {
  return std::visit(
      [](const auto& r) -> const std::string& {
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, FlightRecord>)
          return r.flight_number;
        else
          return r.name;
      },
      record);
}

std::vector<std::string> record_strings(const Record& record) {
  struct Visitor {
    std::vector<std::string> operator()(const FlightRecord& f) const {
      return {f.flight_number, f.origin_city, f.destination_city};
    }
    std::vector<std::string> operator()(const HotelRecord& h) const {
      std::vector<std::string> out{h.name, h.city, h.room_type};
      out.insert(out.end(), h.house_rules.begin(), h.house_rules.end());
      return out;
    }
    std::vector<std::string> operator()(const RestaurantRecord& r) const {
      std::vector<std::string> out{r.name, r.city};
      out.insert(out.end(), r.cuisines.begin(), r.cuisines.end());
      return out;
    }
    std::vector<std::string> operator()(const AttractionRecord& a) const { return {a.name, a.city, a.address}; }
  };
  return std::visit(Visitor{}, record);
}

std::string render_record(const Record& record) {
  struct Visitor {
    std::string operator()(const FlightRecord& f) const {
      return "Flight Number: " + f.flight_number + " | From: " + f.origin_city + " | To: " + f.destination_city +
             " | Date: " + f.date.to_string() + " | Departure: " + f.departure_time.to_string() +
             " | Arrival: " + f.arrival_time.to_string() + " | Duration: " + std::to_string(f.duration_min) +
             " min | Price: " + format_fixed2(f.price);
    }
    std::string operator()(const HotelRecord& h) const {
      return "Name: " + h.name + " | City: " + h.city + " | Price per night: " + format_fixed2(h.price_per_night) +
             " | Room type: " + h.room_type +
             " | House rules: " + (h.house_rules.empty() ? std::string("none") : join(h.house_rules, "; ")) +
             " | Minimum nights: " + std::to_string(h.minimum_nights) +
             " | Maximum occupancy: " + std::to_string(h.maximum_occupancy);
    }
    std::string operator()(const RestaurantRecord& r) const {
      return "Name: " + r.name + " | City: " + r.city + " | Cuisines: " + join(r.cuisines, ", ") +
             " | Average cost: " + format_fixed2(r.average_cost) + " | Rating: " + format_fixed2(r.rating);
    }
    std::string operator()(const AttractionRecord& a) const {
      return "Name: " + a.name + " | City: " + a.city + " | Address: " + a.address;
    }
  };
  return std::visit(Visitor{}, record);
}

json record_to_json(const Record& record) {
  struct Visitor {
    json operator()(const FlightRecord& f) const {
      return {{"kind", "flight"},
              {"flight_number", f.flight_number},
              {"origin_city", f.origin_city},
              {"destination_city", f.destination_city},
              {"departure_time", f.departure_time.to_string()},
              {"arrival_time", f.arrival_time.to_string()},
              {"duration_min", f.duration_min},
              {"price", f.price},
              {"date", f.date.to_string()}};
    }
    json operator()(const HotelRecord& h) const {
      return {{"kind", "hotel"},
              {"name", h.name},
              {"city", h.city},
              {"price_per_night", h.price_per_night},
              {"room_type", h.room_type},
              {"house_rules", h.house_rules},
              {"minimum_nights", h.minimum_nights},
              {"maximum_occupancy", h.maximum_occupancy}};
    }
    json operator()(const RestaurantRecord& r) const {
      return {{"kind", "restaurant"},
              {"name", r.name},
              {"city", r.city},
              {"cuisines", r.cuisines},
              {"average_cost", r.average_cost},
              {"rating", r.rating}};
    }
    json operator()(const AttractionRecord& a) const {
      return {{"kind", "attraction"}, {"name", a.name}, {"city", a.city}, {"address", a.address}};
    }
  };
  return std::visit(Visitor{}, record);
}

Record record_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "flight") {
    FlightRecord f;
    f.flight_number = j.at("flight_number").get<std::string>();
    f.origin_city = j.at("origin_city").get<std::string>();
    f.destination_city = j.at("destination_city").get<std::string>();
    auto dep = ClockTime::parse(j.at("departure_time").get<std::string>());
    auto arr = ClockTime::parse(j.at("arrival_time").get<std::string>());
    auto date = Date::parse(j.at("date").get<std::string>());
    if (!dep || !arr || !date) throw Error("bad flight record in trace");
    f.departure_time = *dep;
    f.arrival_time = *arr;
    f.date = *date;
    f.duration_min = j.at("duration_min").get<int>();
    f.price = j.at("price").get<double>();
    return f;
  }
  if (kind == "hotel") {
    return HotelRecord{j.at("name").get<std::string>(),
                       j.at("city").get<std::string>(),
                       j.at("price_per_night").get<double>(),
                       j.at("room_type").get<std::string>(),
                       j.at("house_rules").get<std::vector<std::string>>(),
                       j.at("minimum_nights").get<int>(),
                       j.at("maximum_occupancy").get<int>()};
  }
  if (kind == "restaurant") {
    return RestaurantRecord{j.at("name").get<std::string>(), j.at("city").get<std::string>(),
                            j.at("cuisines").get<std::vector<std::string>>(), j.at("average_cost").get<double>(),
                            j.at("rating").get<double>()};
  }
  if (kind == "attraction") {
    return AttractionRecord{j.at("name").get<std::string>(), j.at("city").get<std::string>(),
                            j.at("address").get<std::string>()};
  }
  throw Error("unknown record kind in trace: " + kind);
}

// ---------------------------------------------------------------------------
// Loading

namespace {

class TableReader {
 public:
  TableReader(std::string file, std::vector<csv::Row> rows, const std::vector<std::string>& columns)
      : file_(std::move(file)), rows_(std::move(rows)) {
    if (rows_.empty()) throw LoadError(file_ + ": missing header row");
    const auto& header = rows_.front().fields;
    for (const auto& col : columns) {
      auto it = std::find_if(header.begin(), header.end(), [&](const std::string& h) { return trim_view(h) == col; });
      if (it == header.end()) throw LoadError(file_ + ": missing column '" + col + "'");
      positions_[col] = static_cast<std::size_t>(it - header.begin());
    }
    width_ = header.size();
  }

  std::size_t size() const { return rows_.size() - 1; }
  std::size_t line(std::size_t i) const { return rows_[i + 1].line; }

  void check_width(std::size_t i) const {
    if (rows_[i + 1].fields.size() != width_)
      fail(i, "expected " + std::to_string(width_) + " fields, found " + std::to_string(rows_[i + 1].fields.size()));
  }

  std::string text(std::size_t i, const std::string& col) const {
    return trim(rows_[i + 1].fields[positions_.at(col)]);
  }

  std::string required(std::size_t i, const std::string& col) const {
    auto v = text(i, col);
    if (v.empty()) fail(i, "empty " + col);
    return v;
  }

  double number(std::size_t i, const std::string& col) const {
    auto v = text(i, col);
    double out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) fail(i, "invalid " + col + " '" + v + "'");
    return out;
  }

  int integer(std::size_t i, const std::string& col) const {
    auto v = text(i, col);
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) fail(i, "invalid " + col + " '" + v + "'");
    return out;
  }

  [[noreturn]] void fail(std::size_t i, const std::string& what) const {
    throw LoadError(file_ + ":" + std::to_string(line(i)) + ": " + what);
  }

 private:
  std::string file_;
  std::vector<csv::Row> rows_;
  std::map<std::string, std::size_t> positions_;
  std::size_t width_ = 0;
};

TableReader open_table(const std::filesystem::path& dir, const std::string& table,
                       const std::vector<std::string>& columns) {
  auto path = dir / (table + ".csv");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("missing table: " + table);
  std::ostringstream buf;
  buf << in.rdbuf();
  auto file = table + ".csv";
  return TableReader(file, csv::parse(buf.str(), file), columns);
}

std::string route_key(std::string_view origin, std::string_view destination, std::string_view date) {
  return normalize_name(origin) + '\x1f' + normalize_name(destination) + '\x1f' + std::string(trim_view(date));
}

std::string name_city_key(std::string_view name, std::string_view city) {
  return normalize_name(name) + '\x1f' + normalize_name(city);
}

void validate_flight(const FlightRecord& f, const std::string& where) {
  if (f.flight_number.empty()) throw LoadError(where + ": empty flight_number");
  if (f.price < 0) throw LoadError(where + ": negative price");
  if (f.duration_min < 0) throw LoadError(where + ": negative duration_min");
  if (names_equal(f.origin_city, f.destination_city)) throw LoadError(where + ": origin_city equals destination_city");
}

void validate_hotel(const HotelRecord& h, const std::string& where) {
  if (h.name.empty() || h.city.empty()) throw LoadError(where + ": empty name or city");
  if (h.price_per_night < 0) throw LoadError(where + ": negative price_per_night");
  if (h.minimum_nights < 1) throw LoadError(where + ": minimum_nights must be >= 1");
  if (h.maximum_occupancy < 1) throw LoadError(where + ": maximum_occupancy must be >= 1");
}

void validate_restaurant(const RestaurantRecord& r, const std::string& where) {
  if (r.name.empty() || r.city.empty()) throw LoadError(where + ": empty name or city");
  if (r.average_cost < 0) throw LoadError(where + ": negative average_cost");
  if (r.cuisines.empty()) throw LoadError(where + ": empty cuisines");
  if (r.rating < 0 || r.rating > 5) throw LoadError(where + ": rating outside [0,5]");
}

void validate_attraction(const AttractionRecord& a, const std::string& where) {
  if (a.name.empty() || a.city.empty()) throw LoadError(where + ": empty name or city");
}

template <typename T, typename KeyFn>
void check_unique(const std::vector<T>& rows, const std::string& table, KeyFn key,
                  const std::vector<std::string>& where) {
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto [it, inserted] = seen.emplace(key(rows[i]), i);
    if (!inserted) throw LoadError(where[i] + ": duplicate key in " + table + " (first seen at " + where[it->second] + ")");
  }
}

std::vector<std::string> row_labels(const std::string& file, std::size_t n, const TableReader* reader) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(file + ":" + std::to_string(reader ? reader->line(i) : i + 1));
  return out;
}

struct Validated {
  std::vector<std::string> flight_where, hotel_where, restaurant_where, attraction_where;
};

void validate_all(const std::vector<FlightRecord>& flights, const std::vector<HotelRecord>& hotels,
                  const std::vector<RestaurantRecord>& restaurants, const std::vector<AttractionRecord>& attractions,
                  const Validated& where) {
  for (std::size_t i = 0; i < flights.size(); ++i) validate_flight(flights[i], where.flight_where[i]);
  for (std::size_t i = 0; i < hotels.size(); ++i) validate_hotel(hotels[i], where.hotel_where[i]);
  for (std::size_t i = 0; i < restaurants.size(); ++i) validate_restaurant(restaurants[i], where.restaurant_where[i]);
  for (std::size_t i = 0; i < attractions.size(); ++i) validate_attraction(attractions[i], where.attraction_where[i]);

  check_unique(flights, "flights", [](const FlightRecord& f) {
    return normalize_name(f.flight_number) + '\x1f' + f.date.to_string();
  }, where.flight_where);
  check_unique(hotels, "hotels", [](const HotelRecord& h) { return name_city_key(h.name, h.city); },
               where.hotel_where);
  check_unique(restaurants, "restaurants",
               [](const RestaurantRecord& r) { return name_city_key(r.name, r.city); }, where.restaurant_where);
  check_unique(attractions, "attractions",
               [](const AttractionRecord& a) { return name_city_key(a.name, a.city); }, where.attraction_where);
}

}  // namespace

Sandbox Sandbox::load(const std::filesystem::path& dir) {
  auto ft = open_table(dir, "flights",
                       {"flight_number", "origin_city", "destination_city", "departure_time", "arrival_time",
                        "duration_min", "price", "date"});
  auto ht = open_table(dir, "hotels",
                       {"name", "city", "price_per_night", "room_type", "house_rules", "minimum_nights",
                        "maximum_occupancy"});
  auto rt = open_table(dir, "restaurants", {"name", "city", "cuisines", "average_cost", "rating"});
  auto at = open_table(dir, "attractions", {"name", "city", "address"});

  Sandbox sb;
  for (std::size_t i = 0; i < ft.size(); ++i) {
    ft.check_width(i);
    FlightRecord f;
    f.flight_number = ft.required(i, "flight_number");
    f.origin_city = ft.required(i, "origin_city");
    f.destination_city = ft.required(i, "destination_city");
    auto dep = ClockTime::parse(ft.text(i, "departure_time"));
    if (!dep) ft.fail(i, "invalid departure_time '" + ft.text(i, "departure_time") + "'");
    auto arr = ClockTime::parse(ft.text(i, "arrival_time"));
    if (!arr) ft.fail(i, "invalid arrival_time '" + ft.text(i, "arrival_time") + "'");
    auto date = Date::parse(ft.text(i, "date"));
    if (!date) ft.fail(i, "invalid date '" + ft.text(i, "date") + "'");
    f.departure_time = *dep;
    f.arrival_time = *arr;
    f.date = *date;
    f.duration_min = ft.integer(i, "duration_min");
    f.price = ft.number(i, "price");
    sb.flights_.push_back(std::move(f));
  }
  for (std::size_t i = 0; i < ht.size(); ++i) {
    ht.check_width(i);
    HotelRecord h;
    h.name = ht.required(i, "name");
    h.city = ht.required(i, "city");
    h.price_per_night = ht.number(i, "price_per_night");
    h.room_type = ht.required(i, "room_type");
    h.house_rules = split_list(ht.text(i, "house_rules"), ';');
    h.minimum_nights = ht.integer(i, "minimum_nights");
    h.maximum_occupancy = ht.integer(i, "maximum_occupancy");
    sb.hotels_.push_back(std::move(h));
  }
  for (std::size_t i = 0; i < rt.size(); ++i) {
    rt.check_width(i);
    RestaurantRecord r;
    r.name = rt.required(i, "name");
    r.city = rt.required(i, "city");
    r.cuisines = split_list(rt.text(i, "cuisines"), ';');
    r.average_cost = rt.number(i, "average_cost");
    r.rating = rt.number(i, "rating");
    sb.restaurants_.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < at.size(); ++i) {
    at.check_width(i);
    AttractionRecord a;
    a.name = at.required(i, "name");
    a.city = at.required(i, "city");
    a.address = at.text(i, "address");
    sb.attractions_.push_back(std::move(a));
  }

  Validated where{row_labels("flights.csv", ft.size(), &ft), row_labels("hotels.csv", ht.size(), &ht),
                  row_labels("restaurants.csv", rt.size(), &rt), row_labels("attractions.csv", at.size(), &at)};
  validate_all(sb.flights_, sb.hotels_, sb.restaurants_, sb.attractions_, where);
  sb.build_indices();
  return sb;
}

Sandbox Sandbox::from_records(std::vector<FlightRecord> flights, std::vector<HotelRecord> hotels,
                              std::vector<RestaurantRecord> restaurants,
                              std::vector<AttractionRecord> attractions) {
  Validated where{row_labels("flights", flights.size(), nullptr), row_labels("hotels", hotels.size(), nullptr),
                  row_labels("restaurants", restaurants.size(), nullptr),
                  row_labels("attractions", attractions.size(), nullptr)};
  validate_all(flights, hotels, restaurants, attractions, where);
  Sandbox sb;
  sb.flights_ = std::move(flights);
  sb.hotels_ = std::move(hotels);
  sb.restaurants_ = std::move(restaurants);
  sb.attractions_ = std::move(attractions);
  sb.build_indices();
  return sb;
}

void Sandbox::build_indices() {
  for (std::size_t i = 0; i < flights_.size(); ++i) {
    const auto& f = flights_[i];
    flights_by_route_[route_key(f.origin_city, f.destination_city, f.date.to_string())].push_back(i);
    flights_by_number_[normalize_name(f.flight_number)].push_back(i);
    cities_.insert(normalize_name(f.origin_city));
    cities_.insert(normalize_name(f.destination_city));
  }
  for (auto& [key, idx] : flights_by_route_) {
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      const auto& fa = flights_[a];
      const auto& fb = flights_[b];
      if (fa.departure_time != fb.departure_time) return fa.departure_time < fb.departure_time;
      return fa.flight_number < fb.flight_number;
    });
  }

  auto index_named = [&](const auto& rows, Index& by_city, Index& by_name) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      by_city[normalize_name(rows[i].city)].push_back(i);
      by_name[normalize_name(rows[i].name)].push_back(i);
      cities_.insert(normalize_name(rows[i].city));
    }
    for (auto& [key, idx] : by_city) {
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (rows[a].name != rows[b].name) return rows[a].name < rows[b].name;
        return a < b;
      });
    }
  };
  index_named(hotels_, hotels_by_city_, hotels_by_name_);
  index_named(restaurants_, restaurants_by_city_, restaurants_by_name_);
  index_named(attractions_, attractions_by_city_, attractions_by_name_);
}

namespace {

template <typename T>
std::vector<T> gather(const std::vector<T>& rows, const std::unordered_map<std::string, std::vector<std::size_t>>& index,
                      const std::string& key) {
  std::vector<T> out;
  auto it = index.find(key);
  if (it == index.end()) return out;
  out.reserve(it->second.size());
  for (auto i : it->second) out.push_back(rows[i]);
  return out;
}

template <typename T>
const T* find_named(const std::vector<T>& rows, const std::unordered_map<std::string, std::vector<std::size_t>>& by_name,
                    std::string_view name, std::string_view city) {
  auto it = by_name.find(normalize_name(name));
  if (it == by_name.end()) return nullptr;
  auto want = normalize_name(city);
  for (auto i : it->second)
    if (normalize_name(rows[i].city) == want) return &rows[i];
  return nullptr;
}

}  // namespace

std::vector<FlightRecord> Sandbox::flight_search(std::string_view origin, std::string_view destination,
                                                 std::string_view date) const {
  auto parsed = Date::parse(date);
  if (!parsed) return {};
  return gather(flights_, flights_by_route_, route_key(origin, destination, parsed->to_string()));
}

std::vector<HotelRecord> Sandbox::hotel_search(std::string_view city) const {
  return gather(hotels_, hotels_by_city_, normalize_name(city));
}

std::vector<RestaurantRecord> Sandbox::restaurant_search(std::string_view city) const {
  return gather(restaurants_, restaurants_by_city_, normalize_name(city));
}

std::vector<AttractionRecord> Sandbox::attraction_search(std::string_view city) const {
  return gather(attractions_, attractions_by_city_, normalize_name(city));
}

bool Sandbox::entity_exists(EntityKind kind, std::string_view name) const {
  auto key = normalize_name(name);
  switch (kind) {
    case EntityKind::flight: return flights_by_number_.count(key) > 0;
    case EntityKind::hotel: return hotels_by_name_.count(key) > 0;
    case EntityKind::restaurant: return restaurants_by_name_.count(key) > 0;
    case EntityKind::attraction: return attractions_by_name_.count(key) > 0;
    case EntityKind::city: return cities_.count(key) > 0;
  }
  return false;
}

std::vector<const FlightRecord*> Sandbox::flights_by_number(std::string_view flight_number) const {
  std::vector<const FlightRecord*> out;
  auto it = flights_by_number_.find(normalize_name(flight_number));
  if (it == flights_by_number_.end()) return out;
  for (auto i : it->second) out.push_back(&flights_[i]);
  return out;
}

const FlightRecord* Sandbox::find_flight(std::string_view flight_number, const Date& date) const {
  for (const auto* f : flights_by_number(flight_number))
    if (f->date == date) return f;
  return nullptr;
}

const HotelRecord* Sandbox::find_hotel(std::string_view name, std::string_view city) const {
  return find_named(hotels_, hotels_by_name_, name, city);
}

const RestaurantRecord* Sandbox::find_restaurant(std::string_view name, std::string_view city) const {
  return find_named(restaurants_, restaurants_by_name_, name, city);
}

const AttractionRecord* Sandbox::find_attraction(std::string_view name, std::string_view city) const {
  return find_named(attractions_, attractions_by_name_, name, city);
}

TableCounts Sandbox::counts() const {
  return {flights_.size(), hotels_.size(), restaurants_.size(), attractions_.size(), cities_.size()};
}

// ---------------------------------------------------------------------------
// Tools

const std::vector<ToolSignature>& tool_signatures() {
  static const std::vector<ToolSignature> kTools{
      {std::string(kFlightSearch), {"Departure City", "Destination City", "Date"}, EntityKind::flight},
      {std::string(kHotelSearch), {"City"}, EntityKind::hotel},
      {std::string(kRestaurantSearch), {"City"}, EntityKind::restaurant},
      {std::string(kAttractionSearch), {"City"}, EntityKind::attraction},
  };
  return kTools;
}

const ToolSignature* find_tool(std::string_view name) {
  for (const auto& t : tool_signatures())
    if (t.name == name) return &t;
  return nullptr;
}

ToolOutcome invoke_tool(const Sandbox& sandbox, std::string_view tool, const std::vector<std::string>& args) {
  const auto* sig = find_tool(tool);
  if (!sig) return {false, {}, "unknown tool '" + std::string(tool) + "'"};
  if (args.size() != sig->parameters.size()) {
    return {false,
            {},
            std::string(tool) + " expects " + std::to_string(sig->parameters.size()) + " argument(s) (" +
                join(sig->parameters, ", ") + "), got " + std::to_string(args.size())};
  }
  ToolOutcome out;
  auto append = [&](auto rows) {
    for (auto& r : rows) out.records.emplace_back(std::move(r));
  };
  switch (sig->returns) {
    case EntityKind::flight: append(sandbox.flight_search(args[0], args[1], args[2])); break;
    case EntityKind::hotel: append(sandbox.hotel_search(args[0])); break;
    case EntityKind::restaurant: append(sandbox.restaurant_search(args[0])); break;
    case EntityKind::attraction: append(sandbox.attraction_search(args[0])); break;
    case EntityKind::city: break;
  }
  return out;
}

}  // namespace travelmas
