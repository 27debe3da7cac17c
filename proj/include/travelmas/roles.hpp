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
#include <string_view>

namespace travelmas {

enum class AgentRole {
  Orchestrator,
  TransportExpert,
  HotelExpert,
  RestaurantExpert,
  AttractionExpert,
  PlanSummarizer,
  PlanCompiler,
  PlanCritic,
  SingleAgent,  // baseline: one agent holding every tool
};

/// Evidence domains, one per expert.
enum class Domain { transportation, hotel, restaurant, attraction };

std::string_view to_string(AgentRole role);
std::optional<AgentRole> parse_role(std::string_view text);

std::string_view to_string(Domain domain);
std::optional<Domain> parse_domain(std::string_view text);

bool is_expert(AgentRole role);
std::optional<Domain> expert_domain(AgentRole role);
AgentRole expert_for(Domain domain);

/// Experts in the fixed workflow order.
inline constexpr std::array<AgentRole, 4> kExpertOrder{AgentRole::TransportExpert, AgentRole::HotelExpert,
                                                       AgentRole::RestaurantExpert, AgentRole::AttractionExpert};

/// Roles that may append to the public conversation.
bool speaks_publicly(AgentRole role);

}  // namespace travelmas
