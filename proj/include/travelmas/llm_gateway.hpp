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

#include <chrono>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "travelmas/common.hpp"

// Chat-completion gateway. This layer moves text; it never builds or parses
// agent prompts.
namespace travelmas::llm {

class GatewayError : public Error {
 public:
  using Error::Error;
};

/// Scripted backend has no response left for the requesting role.
class ScriptUnderrun : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

/// A replayed request no longer matches the recorded one.
class ReplayMismatch : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

class RetriesExhausted : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

class MalformedReply : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

struct ChatTurn {
  std::string speaker;  // user | assistant | tool
  std::string text;

  bool operator==(const ChatTurn&) const = default;
};

struct ChatRequest {
  std::string caller;  // requesting role label; selects the scripted queue
  std::string system_prompt;
  std::vector<ChatTurn> turns;
  double temperature = 0.0;
  int max_tokens = 2048;
  std::string model_id;

  /// Throws GatewayError when both the system prompt and turns are empty, or
  /// the decoding parameters are out of range.
  void validate() const;
  nlohmann::json canonical() const;
  std::string digest() const;
};

enum class FinishReason { complete, length, error };

std::string_view to_string(FinishReason reason);

struct TokenUsage {
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;

  TokenUsage& operator+=(const TokenUsage& o) {
    prompt_tokens += o.prompt_tokens;
    completion_tokens += o.completion_tokens;
    return *this;
  }
};

struct ChatResponse {
  std::string text;
  FinishReason finish_reason = FinishReason::complete;
  TokenUsage usage;
  int attempts = 1;
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
  double backoff_multiplier = 2.0;
};

enum class BackendKind { remote, scripted };

struct BackendConfig {
  BackendKind kind = BackendKind::scripted;
  std::string endpoint;  // e.g. http://localhost:8000/v1/chat/completions
  std::string api_key_env = "OPENAI_API_KEY";
  std::string model_id = "gpt-4o";
  RetryPolicy retry;
  std::filesystem::path script_path;
  std::optional<std::filesystem::path> record_path;
  double requests_per_minute = 0;  // 0 disables rate limiting
  std::chrono::seconds timeout{120};

  void validate() const;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual ChatResponse complete(const ChatRequest& request) = 0;
};

// ---------------------------------------------------------------------------
// Cassettes

/// One recorded exchange. An empty digest disables the request check, which
/// is how hand-written scripts are expressed.
struct CassetteEntry {
  std::string role;
  std::string request_digest;
  std::string response_text;

  bool operator==(const CassetteEntry&) const = default;
};

std::vector<CassetteEntry> read_cassette(const std::filesystem::path& path);
void write_cassette(const std::filesystem::path& path, const std::vector<CassetteEntry>& entries);
void append_cassette(const std::filesystem::path& path, const CassetteEntry& entry);

/// Persists one exchange to `config.record_path`.
void record_replay(const BackendConfig& config, const ChatRequest& request, const ChatResponse& response);

/// Deterministic backend: one FIFO queue per role, consumed in cassette order.
class ScriptedBackend : public ChatBackend {
 public:
  explicit ScriptedBackend(std::vector<CassetteEntry> entries);
  static std::unique_ptr<ScriptedBackend> from_file(const std::filesystem::path& path);

  ChatResponse complete(const ChatRequest& request) override;

  std::size_t remaining(const std::string& role) const;
  std::size_t consumed() const { return consumed_; }

 private:
  struct Queued {
    std::size_t position;  // 1-based position in the cassette
    CassetteEntry entry;
  };
  std::map<std::string, std::deque<Queued>> queues_;
  std::size_t consumed_ = 0;
};

/// Forwards to another backend and appends each exchange to a cassette.
class RecordingBackend : public ChatBackend {
 public:
  RecordingBackend(std::unique_ptr<ChatBackend> inner, std::filesystem::path cassette);

  ChatResponse complete(const ChatRequest& request) override;

 private:
  std::unique_ptr<ChatBackend> inner_;
  std::filesystem::path cassette_;
};

/// Requests-per-minute limiter shared by every run in a batch.
class TokenBucket {
 public:
  using Clock = std::chrono::steady_clock;

  TokenBucket(double requests_per_minute, double burst = 1.0);

  void acquire();
  bool try_acquire(Clock::time_point now);

 private:
  void refill(Clock::time_point now);

  std::mutex mu_;
  double rate_per_sec_;
  double capacity_;
  double tokens_;
  Clock::time_point last_;
};

/// Chat-completions over HTTP with bearer-token auth from an environment
/// variable. Retries transport failures and 5xx replies with exponential
/// backoff; other statuses fail immediately.
class RemoteBackend : public ChatBackend {
 public:
  explicit RemoteBackend(BackendConfig config, std::shared_ptr<TokenBucket> limiter = nullptr,
                         std::function<void(const std::string&)> log = {});

  ChatResponse complete(const ChatRequest& request) override;

  static nlohmann::json request_body(const ChatRequest& request, const std::string& model_id);
  static ChatResponse parse_reply(const std::string& body);

 private:
  BackendConfig config_;
  std::shared_ptr<TokenBucket> limiter_;
  std::function<void(const std::string&)> log_;
  std::string base_;
  std::string path_;
};

/// Builds the backend described by `config` (wrapped in a recorder when
/// `config.record_path` is set).
std::unique_ptr<ChatBackend> make_backend(const BackendConfig& config, std::shared_ptr<TokenBucket> limiter = nullptr);

/// One-shot convenience over make_backend().
ChatResponse complete(const BackendConfig& config, const ChatRequest& request);

}  // namespace travelmas::llm
