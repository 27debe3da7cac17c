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

#include "travelmas/roles.hpp"

#include <string>

#include "travelmas/common.hpp"

namespace travelmas {

namespace {
constexpr std::array<std::pair<AgentRole, std::string_view>, 9> kRoleNames{{
    {AgentRole::Orchestrator, "Orchestrator"},
    {AgentRole::TransportExpert, "TransportExpert"},
    {AgentRole::HotelExpert, "HotelExpert"},
    {AgentRole::RestaurantExpert, "RestaurantExpert"},
    {AgentRole::AttractionExpert, "AttractionExpert"},
    {AgentRole::PlanSummarizer, "PlanSummarizer"},
    {AgentRole::PlanCompiler, "PlanCompiler"},
    {AgentRole::PlanCritic, "PlanCritic"},
    {AgentRole::SingleAgent, "SingleAgent"},
}};
}  // namespace

std::string_view to_string(AgentRole role) {
  for (const auto& [r, name] : kRoleNames)
    if (r == role) return name;
  return "Unknown";
}

std::optional<AgentRole> parse_role(std::string_view text) {
  std::string key;
  for (char c : normalize_name(text))
    if (c != ' ' && c != '_' && c != '-') key.push_back(c);
  for (const auto& [r, name] : kRoleNames)
    if (to_lower(name) == key) return r;
  return std::nullopt;
}

std::string_view to_string(Domain domain) {
  switch (domain) {
    case Domain::transportation: return "transportation";
    case Domain::hotel: return "hotel";
    case Domain::restaurant: return "restaurant";
    case Domain::attraction: return "attraction";
  }
  return "unknown";
}

std::optional<Domain> parse_domain(std::string_view text) {
  auto t = normalize_name(text);
  if (t == "transportation") return Domain::transportation;
  if (t == "hotel") return Domain::hotel;
  if (t == "restaurant") return Domain::restaurant;
  if (t == "attraction") return Domain::attraction;
  return std::nullopt;
}

bool is_expert(AgentRole role) { return expert_domain(role).has_value(); }

std::optional<Domain> expert_domain(AgentRole role) {
  switch (role) {
    case AgentRole::TransportExpert: return Domain::transportation;
    case AgentRole::HotelExpert: return Domain::hotel;
    case AgentRole::RestaurantExpert: return Domain::restaurant;
    case AgentRole::AttractionExpert: return Domain::attraction;
    default: return std::nullopt;
  }
}

AgentRole expert_for(Domain domain) {
  switch (domain) {
    case Domain::transportation: return AgentRole::TransportExpert;
    case Domain::hotel: return AgentRole::HotelExpert;
    case Domain::restaurant: return AgentRole::RestaurantExpert;
    case Domain::attraction: return AgentRole::AttractionExpert;
  }
  return AgentRole::TransportExpert;
}

bool speaks_publicly(AgentRole role) {
  return role != AgentRole::Orchestrator && role != AgentRole::PlanSummarizer;
}

}  // namespace travelmas
