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

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace travelmas {

/// Calendar date, printed and parsed as YYYY-MM-DD.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  static std::optional<Date> parse(std::string_view text);
  std::string to_string() const;
  Date plus_days(int n) const;

  auto operator<=>(const Date&) const = default;
};

/// Minutes past midnight, printed and parsed as HH:MM (24h).
struct ClockTime {
  int minutes = 0;

  static std::optional<ClockTime> parse(std::string_view text);
  std::string to_string() const;

  auto operator<=>(const ClockTime&) const = default;
};

}  // namespace travelmas
