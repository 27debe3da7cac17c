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

#include "travelmas/llm_gateway.hpp"

#include <cstdlib>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace travelmas::llm {

using nlohmann::json;

void ChatRequest::validate() const {
  if (system_prompt.empty() && turns.empty()) throw GatewayError("chat request has neither system prompt nor turns");
  if (temperature < 0) throw GatewayError("temperature must be >= 0");
  if (max_tokens <= 0) throw GatewayError("max_tokens must be > 0");
}

json ChatRequest::canonical() const {
  json t = json::array();
  for (const auto& turn : turns) t.push_back({{"speaker", turn.speaker}, {"text", turn.text}});
  return {{"caller", caller},        {"system", system_prompt},   {"turns", t},
          {"model", model_id},       {"temperature", temperature}, {"max_tokens", max_tokens}};
}

std::string ChatRequest::digest() const { return hex_digest(canonical().dump()); }

std::string_view to_string(FinishReason reason) {
  switch (reason) {
    case FinishReason::complete: return "complete";
    case FinishReason::length: return "length";
    case FinishReason::error: return "error";
  }
  return "error";
}

void BackendConfig::validate() const {
  if (kind == BackendKind::remote && endpoint.empty()) throw GatewayError("remote backend requires an endpoint");
  if (kind == BackendKind::scripted && script_path.empty()) throw GatewayError("scripted backend requires a script path");
  if (retry.max_attempts < 1) throw GatewayError("retry.max_attempts must be >= 1");
  if (requests_per_minute < 0) throw GatewayError("requests_per_minute must be >= 0");
}

// ---------------------------------------------------------------------------
// Cassettes

std::vector<CassetteEntry> read_cassette(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GatewayError("cannot open cassette " + path.string());
  std::vector<CassetteEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim_view(line).empty()) continue;
    try {
      auto j = json::parse(line);
      out.push_back({j.at("role").get<std::string>(), j.value("request_digest", std::string{}),
                     j.at("response_text").get<std::string>()});
    } catch (const json::exception& e) {
      throw GatewayError(path.filename().string() + ":" + std::to_string(lineno) + ": bad cassette record: " + e.what());
    }
  }
  return out;
}

namespace {
std::string cassette_line(const CassetteEntry& e) {
  json j{{"role", e.role}, {"request_digest", e.request_digest}, {"response_text", e.response_text}};
  return j.dump() + "\n";
}
}  // namespace

void write_cassette(const std::filesystem::path& path, const std::vector<CassetteEntry>& entries) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw GatewayError("cannot write cassette " + path.string());
  for (const auto& e : entries) out << cassette_line(e);
  if (!out) throw GatewayError("write failure on cassette " + path.string());
}

void append_cassette(const std::filesystem::path& path, const CassetteEntry& entry) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw GatewayError("cannot append to cassette " + path.string());
  out << cassette_line(entry);
  out.flush();
  if (!out) throw GatewayError("write failure on cassette " + path.string());
}

void record_replay(const BackendConfig& config, const ChatRequest& request, const ChatResponse& response) {
  if (!config.record_path) throw GatewayError("recording is not enabled");
  append_cassette(*config.record_path, {request.caller, request.digest(), response.text});
}

ScriptedBackend::ScriptedBackend(std::vector<CassetteEntry> entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto role = entries[i].role;
    queues_[role].push_back({i + 1, std::move(entries[i])});
  }
}

std::unique_ptr<ScriptedBackend> ScriptedBackend::from_file(const std::filesystem::path& path) {
  return std::make_unique<ScriptedBackend>(read_cassette(path));
}

ChatResponse ScriptedBackend::complete(const ChatRequest& request) {
  request.validate();
  auto it = queues_.find(request.caller);
  if (it == queues_.end() || it->second.empty())
    throw ScriptUnderrun("no scripted response left for role " + request.caller);
  auto next = std::move(it->second.front());
  it->second.pop_front();
  ++consumed_;
  if (!next.entry.request_digest.empty()) {
    auto digest = request.digest();
    if (digest != next.entry.request_digest)
      throw ReplayMismatch("replay diverged at cassette exchange " + std::to_string(next.position) + " (role " +
                           request.caller + ", exchange " + std::to_string(consumed_) + " of this run): request digest " +
                           digest + " != recorded " + next.entry.request_digest);
  }
  ChatResponse resp;
  resp.text = std::move(next.entry.response_text);
  resp.finish_reason = FinishReason::complete;
  return resp;
}

std::size_t ScriptedBackend::remaining(const std::string& role) const {
  auto it = queues_.find(role);
  return it == queues_.end() ? 0 : it->second.size();
}

RecordingBackend::RecordingBackend(std::unique_ptr<ChatBackend> inner, std::filesystem::path cassette)
    : inner_(std::move(inner)), cassette_(std::move(cassette)) {}

ChatResponse RecordingBackend::complete(const ChatRequest& request) {
  auto resp = inner_->complete(request);
  append_cassette(cassette_, {request.caller, request.digest(), resp.text});
  return resp;
}

// ---------------------------------------------------------------------------
// Rate limiting

TokenBucket::TokenBucket(double requests_per_minute, double burst)
    : rate_per_sec_(requests_per_minute / 60.0), capacity_(burst), tokens_(burst), last_(Clock::now()) {}

void TokenBucket::refill(Clock::time_point now) {
  if (now <= last_) return;
  std::chrono::duration<double> dt = now - last_;
  tokens_ = std::min(capacity_, tokens_ + dt.count() * rate_per_sec_);
  last_ = now;
}

bool TokenBucket::try_acquire(Clock::time_point now) {
  std::lock_guard lock(mu_);
  refill(now);
  if (tokens_ >= 1.0) {
    tokens_ -= 1.0;
    return true;
  }
  return false;
}

void TokenBucket::acquire() {
  if (rate_per_sec_ <= 0) return;
  while (!try_acquire(Clock::now())) {
    std::this_thread::sleep_for(std::chrono::milliseconds(static_cast<int>(std::max(1.0, 1000.0 / rate_per_sec_ / 10))));
  }
}

// ---------------------------------------------------------------------------
// Remote

namespace {

// Splits "http://host:port/path" into ("http://host:port", "/path").
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
  auto scheme = endpoint.find("://");
  if (scheme == std::string::npos) throw GatewayError("endpoint must include a scheme: " + endpoint);
  auto slash = endpoint.find('/', scheme + 3);
  if (slash == std::string::npos) return {endpoint, "/v1/chat/completions"};
  return {endpoint.substr(0, slash), endpoint.substr(slash)};
}

}  // namespace

RemoteBackend::RemoteBackend(BackendConfig config, std::shared_ptr<TokenBucket> limiter,
                             std::function<void(const std::string&)> log)
    : config_(std::move(config)), limiter_(std::move(limiter)), log_(std::move(log)) {
  config_.validate();
  std::tie(base_, path_) = split_endpoint(config_.endpoint);
}

json RemoteBackend::request_body(const ChatRequest& request, const std::string& model_id) {
  json messages = json::array();
  if (!request.system_prompt.empty()) messages.push_back({{"role", "system"}, {"content", request.system_prompt}});
  for (const auto& t : request.turns) {
    // Tool results travel as plain user text; no function-calling wire features.
    std::string role = t.speaker == "assistant" ? "assistant" : "user";
    messages.push_back({{"role", role}, {"content", t.text}});
  }
  return {{"model", request.model_id.empty() ? model_id : request.model_id},
          {"messages", messages},
          {"temperature", request.temperature},
          {"max_tokens", request.max_tokens}};
}

ChatResponse RemoteBackend::parse_reply(const std::string& body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw MalformedReply(std::string("reply is not JSON: ") + e.what());
  }
  if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty())
    throw MalformedReply("reply has no choices");
  const auto& choice = j["choices"][0];
  if (!choice.contains("message") || !choice["message"].contains("content") ||
      !choice["message"]["content"].is_string())
    throw MalformedReply("reply has no choices[0].message.content");
  ChatResponse resp;
  resp.text = choice["message"]["content"].get<std::string>();
  auto finish = choice.value("finish_reason", std::string("stop"));
  resp.finish_reason = finish == "length" ? FinishReason::length : FinishReason::complete;
  if (j.contains("usage") && j["usage"].is_object()) {
    resp.usage.prompt_tokens = j["usage"].value("prompt_tokens", std::int64_t{0});
    resp.usage.completion_tokens = j["usage"].value("completion_tokens", std::int64_t{0});
  }
  return resp;
}

ChatResponse RemoteBackend::complete(const ChatRequest& request) {
  request.validate();
  httplib::Headers headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key)
    headers.emplace("Authorization", std::string("Bearer ") + key);
  auto body = request_body(request, config_.model_id).dump();

  auto backoff = config_.retry.initial_backoff;
  std::string last_error;
  for (int attempt = 1; attempt <= config_.retry.max_attempts; ++attempt) {
    if (limiter_) limiter_->acquire();
    httplib::Client client(base_);
    client.set_connection_timeout(config_.timeout);
    client.set_read_timeout(config_.timeout);
    auto res = client.Post(path_, headers, body, "application/json");
    bool retriable = false;
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      retriable = true;
    } else if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      retriable = true;
    } else if (res->status != 200) {
      throw GatewayError("HTTP " + std::to_string(res->status) + " from " + config_.endpoint + ": " + res->body);
    } else {
      auto resp = parse_reply(res->body);
      resp.attempts = attempt;
      if (log_) log_("chat completion succeeded after " + std::to_string(attempt) + " attempt(s)");
      return resp;
    }
    if (log_) log_("attempt " + std::to_string(attempt) + " failed: " + last_error);
    if (retriable && attempt < config_.retry.max_attempts) {
      std::this_thread::sleep_for(backoff);
      backoff = std::chrono::milliseconds(
          static_cast<std::int64_t>(static_cast<double>(backoff.count()) * config_.retry.backoff_multiplier));
    }
  }
  throw RetriesExhausted("gave up after " + std::to_string(config_.retry.max_attempts) + " attempts: " + last_error);
}

std::unique_ptr<ChatBackend> make_backend(const BackendConfig& config, std::shared_ptr<TokenBucket> limiter) {
  config.validate();
  std::unique_ptr<ChatBackend> backend;
  if (config.kind == BackendKind::scripted) {
    backend = ScriptedBackend::from_file(config.script_path);
  } else {
    if (!limiter && config.requests_per_minute > 0) limiter = std::make_shared<TokenBucket>(config.requests_per_minute);
    backend = std::make_unique<RemoteBackend>(config, std::move(limiter));
  }
  if (config.record_path) backend = std::make_unique<RecordingBackend>(std::move(backend), *config.record_path);
  return backend;
}

ChatResponse complete(const BackendConfig& config, const ChatRequest& request) {
  return make_backend(config)->complete(request);
}

}  // namespace travelmas::llm
