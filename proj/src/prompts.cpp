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

#include "travelmas/prompts.hpp"

#include <fstream>
#include <sstream>

#include "travelmas/common.hpp"

namespace travelmas {

// Generated by CMake from prompts/*.txt.
namespace embedded {
extern const std::map<std::string, std::string>& prompt_files();
}

std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    auto open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    auto close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    out.append(tmpl.substr(pos, open - pos));
    auto name = trim(tmpl.substr(open + 2, close - open - 2));
    auto it = vars.find(name);
    if (it == vars.end()) throw Error("prompt placeholder '{{" + name + "}}' has no value");
    out += it->second;
    pos = close + 2;
  }
  return out;
}

namespace {
// Files end with a newline; templates are stored without it.
std::string strip_final_newline(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}
}  // namespace

PromptSet PromptSet::defaults() {
  PromptSet p;
  for (const auto& [name, text] : embedded::prompt_files()) p.templates_[name] = strip_final_newline(text);
  return p;
}

PromptSet PromptSet::load(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error("prompt directory not found: " + dir.string());
  auto p = defaults();
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    p.templates_[entry.path().stem().string()] = strip_final_newline(buf.str());
  }
  return p;
}

const std::string& PromptSet::get(std::string_view name) const {
  auto it = templates_.find(name);
  if (it == templates_.end()) throw Error("unknown prompt template '" + std::string(name) + "'");
  return it->second;
}

std::string PromptSet::digest() const {
  std::string all;
  for (const auto& [name, text] : templates_) {
    all += name;
    all += '\0';
    all += text;
    all += '\0';
  }
  return hex_digest(all);
}

}  // namespace travelmas
