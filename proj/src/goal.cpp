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

#include "travelmas/goal.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "travelmas/common.hpp"

namespace travelmas {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 5> kHouseRules{"parties", "smoking", "children under 10", "pets", "visitors"};
constexpr std::array<std::string_view, 4> kRoomTypes{"entire room", "private room", "shared room", "not shared room"};
constexpr std::array<std::string_view, 2> kTransport{"no flight", "no self-driving"};

template <std::size_t N>
std::string one_of(const json& v, const std::array<std::string_view, N>& allowed, const std::string& field,
                   const std::string& task) {
  if (!v.is_string()) throw LoadError("task " + task + ": " + field + " must be a string or null");
  auto norm = normalize_name(v.get<std::string>());
  for (auto a : allowed)
    if (norm == a) return norm;
  throw LoadError("task " + task + ": unsupported " + field + " '" + v.get<std::string>() + "'");
}

std::string required_string(const json& record, const char* key, const std::string& task) {
  if (!record.contains(key) || !record[key].is_string() || trim_view(record[key].get<std::string>()).empty())
    throw LoadError("task " + task + ": missing or empty '" + key + "'");
  return trim(record[key].get<std::string>());
}

int required_int(const json& record, const char* key, const std::string& task) {
  if (!record.contains(key) || !record[key].is_number_integer())
    throw LoadError("task " + task + ": '" + key + "' must be an integer");
  return record[key].get<int>();
}

}  // namespace

Goal parse_goal(const json& record) {
  if (!record.is_object()) throw LoadError("task record must be an object");
  Goal g;
  if (record.contains("task_id") && record["task_id"].is_string())
    g.task_id = record["task_id"].get<std::string>();
  else if (record.contains("idx") && record["idx"].is_number_integer())
    g.task_id = std::to_string(record["idx"].get<int>());
  if (trim_view(g.task_id).empty()) throw LoadError("task record without task_id");
  const auto& id = g.task_id;

  g.query_text = required_string(record, "query", id);
  auto& m = g.metadata;
  m.origin = required_string(record, "org", id);
  m.destination = required_string(record, "dest", id);
  m.duration_days = required_int(record, "days", id);
  if (m.duration_days != 3 && m.duration_days != 5 && m.duration_days != 7)
    throw LoadError("task " + id + ": days must be 3, 5 or 7");
  m.visiting_city_number = record.contains("visiting_city_number") ? required_int(record, "visiting_city_number", id) : 1;
  if (m.visiting_city_number < 1) throw LoadError("task " + id + ": visiting_city_number must be >= 1");
  m.travelers = record.contains("people_number") ? required_int(record, "people_number", id) : 1;
  if (m.travelers < 1) throw LoadError("task " + id + ": people_number must be >= 1");

  if (!record.contains("date") || !record["date"].is_array()) throw LoadError("task " + id + ": 'date' must be a list");
  for (const auto& d : record["date"]) {
    auto parsed = d.is_string() ? Date::parse(d.get<std::string>()) : std::nullopt;
    if (!parsed) throw LoadError("task " + id + ": bad date " + d.dump());
    m.dates.push_back(*parsed);
  }
  if (static_cast<int>(m.dates.size()) != m.duration_days)
    throw LoadError("task " + id + ": expected " + std::to_string(m.duration_days) + " dates, got " +
                    std::to_string(m.dates.size()));
  for (std::size_t i = 1; i < m.dates.size(); ++i)
    if (m.dates[i] != m.dates[i - 1].plus_days(1)) throw LoadError("task " + id + ": dates must be consecutive");

  if (record.contains("budget") && !record["budget"].is_null()) {
    if (!record["budget"].is_number()) throw LoadError("task " + id + ": budget must be a number");
    double b = record["budget"].get<double>();
    if (!(b > 0)) throw LoadError("task " + id + ": budget must be positive");
    m.budget = b;
  }

  if (record.contains("local_constraint") && !record["local_constraint"].is_null()) {
    const auto& lc = record["local_constraint"];
    if (!lc.is_object()) throw LoadError("task " + id + ": local_constraint must be an object");
    for (const auto& [key, value] : lc.items()) {
      if (value.is_null()) continue;
      if (key == "house rule") {
        m.constraints.house_rule = one_of(value, kHouseRules, key, id);
      } else if (key == "room type") {
        m.constraints.room_type = one_of(value, kRoomTypes, key, id);
      } else if (key == "transportation") {
        m.constraints.transportation = one_of(value, kTransport, key, id);
      } else if (key == "cuisine") {
        auto add = [&](const json& c) {
          if (!c.is_string() || trim_view(c.get<std::string>()).empty())
            throw LoadError("task " + id + ": cuisine entries must be non-empty strings");
          m.constraints.cuisines.push_back(trim(c.get<std::string>()));
        };
        if (value.is_array())
          for (const auto& c : value) add(c);
        else
          add(value);
      } else {
        throw LoadError("task " + id + ": unknown local_constraint '" + key + "'");
      }
    }
  }
  return g;
}

json goal_to_json(const Goal& g) {
  const auto& m = g.metadata;
  json dates = json::array();
  for (const auto& d : m.dates) dates.push_back(d.to_string());
  auto opt = [](const std::optional<std::string>& v) -> json { return v ? json(*v) : json(nullptr); };
  json cuisine = m.constraints.cuisines.empty() ? json(nullptr) : json(m.constraints.cuisines);
  return {{"task_id", g.task_id},
          {"query", g.query_text},
          {"org", m.origin},
          {"dest", m.destination},
          {"days", m.duration_days},
          {"visiting_city_number", m.visiting_city_number},
          {"date", dates},
          {"people_number", m.travelers},
          {"budget", m.budget ? json(*m.budget) : json(nullptr)},
          {"local_constraint",
           {{"house rule", opt(m.constraints.house_rule)},
            {"room type", opt(m.constraints.room_type)},
            {"cuisine", cuisine},
            {"transportation", opt(m.constraints.transportation)}}}};
}

std::vector<Goal> load_tasks(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open task file " + path.string());
  std::vector<Goal> out;
  std::set<std::string> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim_view(line).empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw LoadError(path.filename().string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    Goal g;
    try {
      g = parse_goal(record);
    } catch (const LoadError& e) {
      throw LoadError(path.filename().string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!ids.insert(g.task_id).second) throw LoadError("duplicate task_id '" + g.task_id + "'");
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace travelmas
