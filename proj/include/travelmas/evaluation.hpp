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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "travelmas/goal.hpp"
#include "travelmas/plan.hpp"
#include "travelmas/sandbox.hpp"

namespace travelmas {

enum class ConstraintKind { commonsense, hard };
enum class Area { Hotel, Restaurant, Attraction, Transportation, Other };

inline constexpr std::array<Area, 5> kAreas{Area::Hotel, Area::Restaurant, Area::Attraction, Area::Transportation,
                                            Area::Other};

std::string_view to_string(ConstraintKind kind);
std::string_view to_string(Area area);
std::optional<ConstraintKind> parse_constraint_kind(std::string_view text);
std::optional<Area> parse_area(std::string_view text);

// Validation category names.
namespace category {
inline constexpr std::string_view kWithinSandbox = "Within Sandbox (No Hallucination)";
inline constexpr std::string_view kCompleteInformation = "Complete Information";
inline constexpr std::string_view kWithinCurrentCity = "Within Current City";
inline constexpr std::string_view kReasonableCityRoute = "Reasonable City Route";
inline constexpr std::string_view kDiverseRestaurants = "Diverse Restaurants";
inline constexpr std::string_view kDiverseAttractions = "Diverse Attractions";
inline constexpr std::string_view kTransportationConsistency = "Transportation Consistency";
inline constexpr std::string_view kAccommodationRules = "Accommodation Rules";

inline constexpr std::string_view kBudget = "Budget/Cost Compliance";
inline constexpr std::string_view kRoomType = "Room Type Preferences";
inline constexpr std::string_view kRoomRule = "Room Rule Compliance";
inline constexpr std::string_view kCuisine = "Cuisine Preferences";
inline constexpr std::string_view kTransportationPreference = "Transportation Preferences";
}  // namespace category

struct CategoryArea {
  std::string_view category;
  Area area;
};

/// Category -> area table used for failure analysis, including the
/// "City Valid - ..." rows that no validator here emits.
const std::vector<CategoryArea>& category_area_table();

/// Area of a category name; Other for names outside the table.
Area area_of(std::string_view category);

struct ConstraintResult {
  std::string name;
  ConstraintKind kind = ConstraintKind::commonsense;
  Area area = Area::Other;
  bool passed = true;
  std::string detail;
  std::vector<std::string> violations;  // one line per offending mention

  bool operator==(const ConstraintResult&) const = default;
};

/// Eight results, in a fixed order, one per commonsense category.
std::vector<ConstraintResult> check_commonsense(const Plan& plan, const Sandbox& sandbox, const Goal& goal);

/// Five results, in a fixed order. Preferences the traveler did not state
/// pass with detail "not requested", so every task contributes the same
/// number of hard constraints.
std::vector<ConstraintResult> check_hard(const Plan& plan, const Sandbox& sandbox, const Goal& goal);

/// Itemized plan cost under the budget arithmetic.
struct CostBreakdown {
  double flights = 0;
  double accommodation = 0;
  double meals = 0;
  std::vector<std::string> unpriced;  // mentions with no matching sandbox row

  double total() const { return flights + accommodation + meals; }
};

CostBreakdown plan_cost(const Plan& plan, const Sandbox& sandbox, const Goal& goal);

struct TaskEvaluation {
  std::string task_id;
  bool delivered = false;
  std::vector<ConstraintResult> commonsense;
  std::vector<ConstraintResult> hard;
  std::optional<Plan> plan;

  bool commonsense_pass() const;
  bool hard_pass() const;
  bool final_pass() const { return delivered && commonsense_pass() && hard_pass(); }
};

/// A missing plan yields an undelivered evaluation with every constraint failed.
TaskEvaluation evaluate_task(const Goal& goal, const std::optional<Plan>& plan, const Sandbox& sandbox);

struct MetricOptions {
  // Undelivered tasks contribute their (failed) constraints to micro rates.
  bool include_undelivered_in_micro = true;
};

struct BenchmarkMetrics {
  double delivery_rate = 0;
  double commonsense_micro = 0;
  double commonsense_macro = 0;
  double hard_micro = 0;
  double hard_macro = 0;
  double final_pass_rate = 0;
  std::size_t tasks = 0;

  bool operator==(const BenchmarkMetrics&) const = default;
};

/// Metric labels in report order.
inline constexpr std::array<std::string_view, 6> kMetricNames{
    "Delivery Rate",          "Commonsense Micro Pass Rate", "Commonsense Macro Pass Rate",
    "Hard Micro Pass Rate",   "Hard Macro Pass Rate",        "Final Pass Rate"};

std::array<double, 6> metric_values(const BenchmarkMetrics& m);

/// Throws Error on an empty list. Percentages in [0, 100].
BenchmarkMetrics compute_metrics(std::span<const TaskEvaluation> evals, MetricOptions options = {});

struct AreaFailure {
  Area area;
  std::size_t failed = 0;
  std::size_t total = 0;
  double percent = 0;  // 0 when total is 0
};

/// One row per area, in kAreas order.
std::vector<AreaFailure> categorize_failures(std::span<const TaskEvaluation> evals);

struct HallucinationCounts {
  std::size_t flights = 0;
  std::size_t hotels = 0;
  std::size_t restaurants = 0;
  std::size_t attractions = 0;

  std::size_t total() const { return flights + hotels + restaurants + attractions; }
  bool operator==(const HallucinationCounts&) const = default;
};

/// Plan mentions that fail entity_exists, per kind, over the evaluations'
/// plans.
HallucinationCounts count_hallucinations(std::span<const TaskEvaluation> evals, const Sandbox& sandbox);

/// One named entity in a plan, in plan order: per day transportation,
/// breakfast, attractions, lunch, dinner, accommodation.
struct PlanMention {
  int day = 1;
  std::string field;
  EntityKind kind = EntityKind::flight;
  std::string name;
  std::string city;  // empty for flights and for values without a city
};

std::vector<PlanMention> collect_mentions(const Plan& plan);

nlohmann::json constraint_to_json(const ConstraintResult& r);
ConstraintResult constraint_from_json(const nlohmann::json& j);
nlohmann::json metrics_to_json(const BenchmarkMetrics& m);
BenchmarkMetrics metrics_from_json(const nlohmann::json& j);

}  // namespace travelmas
