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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "travelmas/calendar.hpp"

namespace travelmas {

/// User-specified constraints attached to a task. Unset members mean the
/// traveler stated no preference.
struct HardConstraintSpec {
  std::optional<std::string> house_rule;      // parties | smoking | children under 10 | pets | visitors
  std::optional<std::string> room_type;       // entire room | private room | shared room | not shared room
  std::vector<std::string> cuisines;          // each must be served at least once
  std::optional<std::string> transportation;  // no flight | no self-driving

  bool operator==(const HardConstraintSpec&) const = default;
};

struct GoalMetadata {
  std::string origin;
  std::string destination;
  int visiting_city_number = 1;
  std::vector<Date> dates;  // one per day
  int duration_days = 3;    // 3, 5 or 7
  int travelers = 1;
  std::optional<double> budget;
  HardConstraintSpec constraints;

  bool operator==(const GoalMetadata&) const = default;
};

/// The natural-language task plus its parsed structure.
struct Goal {
  std::string task_id;
  std::string query_text;
  GoalMetadata metadata;

  bool operator==(const Goal&) const = default;
};

/// Parses one task record. Field names follow the upstream benchmark
/// (`org`, `dest`, `days`, `date`, `people_number`, `local_constraint`,
/// `budget`, `query`). Throws LoadError on any unparseable or out-of-range field.
Goal parse_goal(const nlohmann::json& record);
nlohmann::json goal_to_json(const Goal& goal);

/// Line-delimited task file; task ids must be unique.
std::vector<Goal> load_tasks(const std::filesystem::path& path);

}  // namespace travelmas
