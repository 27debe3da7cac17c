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
#include <map>
#include <string>
#include <string_view>

namespace travelmas {

/// Fills `{{name}}` placeholders. Throws Error on a placeholder with no value.
std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& vars);

/// Named prompt templates. Defaults are compiled in from prompts/*.txt; a
/// directory of same-named files overrides them one by one.
class PromptSet {
 public:
  static PromptSet defaults();
  static PromptSet load(const std::filesystem::path& dir);

  const std::string& get(std::string_view name) const;
  std::string render(std::string_view name, const std::map<std::string, std::string>& vars) const {
    return render_template(get(name), vars);
  }

  const std::map<std::string, std::string, std::less<>>& all() const { return templates_; }
  std::string digest() const;

 private:
  std::map<std::string, std::string, std::less<>> templates_;
};

}  // namespace travelmas
