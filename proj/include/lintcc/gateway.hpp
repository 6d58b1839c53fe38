// Copyright 2026 The Lintcc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LINTCC_GATEWAY_HPP_
#define LINTCC_GATEWAY_HPP_

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "lintcc/errors.hpp"

// Provider-agnostic access to a chat-completion model and an embedding
// model. Every request/response pair can be recorded to a JSON-lines replay
// cache keyed by a content hash of the canonicalized request, so the whole
// pipeline runs offline and deterministically in tests.

namespace lintcc::gateway {

class CacheMissError : public Error {
 public:
  explicit CacheMissError(const std::string& key)
      : Error("replay cache miss for key " + key) {}
};

class TransportError : public Error {
 public:
  TransportError(const std::string& what, int attempts)
      : Error(what + " (after " + std::to_string(attempts) + " attempts)") {}
};

class ProviderError : public Error {
 public:
  ProviderError(int status, const std::string& body)
      : Error("provider returned status " + std::to_string(status) + ": " + body),
        status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

class MissingSlotError : public Error {
 public:
  explicit MissingSlotError(const std::string& slot)
      : Error("unbound template slot <" + slot + ">"), slot_(slot) {}
  const std::string& slot() const { return slot_; }

 private:
  std::string slot_;
};

enum class Role { kSystem, kUser, kAssistant };

std::string_view to_string(Role role);

struct CompletionRequest {
  std::vector<std::pair<Role, std::string>> prompt_parts;  // nonempty
  double temperature = 0.0;
  int max_tokens = 4096;
  std::string model_id;

  static CompletionRequest user_message(std::string model_id, std::string text);
};

enum class Mode { kLive, kRecord, kReplay };

Mode mode_from_string(const std::string& tag);  // "live" | "record" | "replay"
std::string_view to_string(Mode mode);

// Canonical encoding used for cache keys: JSON with sorted keys and compact
// separators; message text is normalized by trimming trailing whitespace on
// each line and trailing newlines. Changing temperature, model or any
// message content changes the key.
std::string canonical_completion_request(const CompletionRequest& req);
std::string canonical_embedding_request(const std::string& model_id,
                                        const std::string& text);

std::string sha256_hex(std::string_view data);

struct PromptTemplate {
  std::string name;
  std::vector<std::string> slots;
  std::string body;  // contains <slot> markers
};

// Single-pass marker substitution; substituted values are never re-scanned.
// Throws MissingSlotError naming the first unbound slot in body order.
std::string render(const PromptTemplate& tpl,
                   const std::map<std::string, std::string>& bindings);

// Hash pinned into run manifests so output files identify their prompts.
std::string template_hash(const PromptTemplate& tpl);

// JSON-lines replay cache. One `{key, request_digest, response_text,
// recorded_at}` object per line; later lines override earlier ones. Reads
// are lock-free after load; appends are serialized.
class ReplayCache {
 public:
  ReplayCache() = default;

  // Merges entries from `path` if it exists; a missing file is a no-op.
  void load(const std::string& path);

  std::optional<std::string> lookup(const std::string& key) const;
  // Inserts and appends one line to `path`.
  void record(const std::string& path, const std::string& key,
              const std::string& request_digest, const std::string& response_text);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::string> entries_;
};

struct GatewayConfig {
  Mode mode = Mode::kReplay;
  std::string base_url;  // e.g. https://api.openai.com/v1
  std::string api_key;
  std::string model_id = "gpt-4o";
  std::string embed_model_id = "text-embedding-ada-002";
  std::string cache_path;
  int parallelism = 4;   // concurrent in-flight requests
  int max_retries = 3;   // transport retries with exponential backoff
  int backoff_ms = 200;  // first backoff step

  // Reads LINTCC_API_KEY, LINTCC_BASE_URL, LINTCC_MODEL_ID and
  // LINTCC_EMBED_MODEL_ID on top of the defaults above.
  static GatewayConfig from_env();
};

class LlmGateway {
 public:
  explicit LlmGateway(GatewayConfig config);
  ~LlmGateway();

  LlmGateway(const LlmGateway&) = delete;
  LlmGateway& operator=(const LlmGateway&) = delete;

  const GatewayConfig& config() const { return config_; }

  // Returns the completion text. Replay mode never touches the network and
  // throws CacheMissError for unknown requests; record mode performs the
  // live call and persists the response.
  std::string complete(const CompletionRequest& req);

  // Fixed-dimension embedding vector; cached exactly like complete().
  std::vector<double> embed(const std::string& text);

  // Invoked with every request before it is served (from cache or live).
  // Used by tests and audit logging.
  void set_request_observer(std::function<void(const CompletionRequest&)> fn);

  std::size_t cache_size() const { return cache_.size(); }

 private:
  std::string serve(const std::string& key, const std::string& digest,
                    const std::function<std::string()>& live_call);
  std::string post_json(const std::string& path, const std::string& body);

  GatewayConfig config_;
  ReplayCache cache_;
  std::function<void(const CompletionRequest&)> observer_;
  std::mutex observer_mutex_;
  std::unique_ptr<class RequestSlots> slots_;  // bounds in-flight requests
};

}  // namespace lintcc::gateway

#endif  // LINTCC_GATEWAY_HPP_
