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

#include "travelmas/calendar.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

#include "travelmas/common.hpp"

namespace travelmas {

namespace {

std::optional<int> parse_digits(std::string_view s) {
  if (s.empty()) return std::nullopt;
  for (char c : s)
    if (c < '0' || c > '9') return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

std::optional<Date> Date::parse(std::string_view text) {
  auto t = trim_view(text);
  if (t.size() != 10 || t[4] != '-' || t[7] != '-') return std::nullopt;
  auto y = parse_digits(t.substr(0, 4));
  auto m = parse_digits(t.substr(5, 2));
  auto d = parse_digits(t.substr(8, 2));
  if (!y || !m || !d) return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
                                  std::chrono::day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{*y, *m, *d};
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

Date Date::plus_days(int n) const {
  using namespace std::chrono;
  sys_days base = year_month_day{std::chrono::year{this->year}, std::chrono::month{static_cast<unsigned>(month)},
                                 std::chrono::day{static_cast<unsigned>(this->day)}};
  year_month_day out{base + days{n}};
  return Date{static_cast<int>(out.year()), static_cast<int>(static_cast<unsigned>(out.month())),
              static_cast<int>(static_cast<unsigned>(out.day()))};
}

std::optional<ClockTime> ClockTime::parse(std::string_view text) {
  auto t = trim_view(text);
  auto colon = t.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon > 2 || t.size() - colon != 3) return std::nullopt;
  auto h = parse_digits(t.substr(0, colon));
  auto m = parse_digits(t.substr(colon + 1));
  if (!h || !m || *h > 23 || *m > 59) return std::nullopt;
  return ClockTime{*h * 60 + *m};
}

std::string ClockTime::to_string() const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%02d:%02d", minutes / 60, minutes % 60);
  return buf;
}

}  // namespace travelmas
