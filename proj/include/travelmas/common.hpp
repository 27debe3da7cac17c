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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace travelmas {

/// Base class for every error this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Table loading and task-file parsing failures.
class LoadError : public Error {
 public:
  using Error::Error;
};

// Text helpers shared by the sandbox, the tool-call scanner and the evaluator.

std::string_view trim_view(std::string_view s);
std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

/// Lowercase, trim, and collapse inner whitespace runs to one space. This is
/// the only name equivalence used for grounding; there is no fuzzy matching.
std::string normalize_name(std::string_view s);

bool names_equal(std::string_view a, std::string_view b);

/// Splits on `sep`, trimming each piece. Empty pieces are dropped.
std::vector<std::string> split_list(std::string_view s, char sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool starts_with_icase(std::string_view s, std::string_view prefix);

/// 64-bit FNV-1a. Used for request and config digests, not for security.
std::uint64_t fnv1a64(std::string_view data);
std::string hex_digest(std::string_view data);

/// Fixed two-decimal rendering used by every report.
std::string format_fixed2(double value);

}  // namespace travelmas
