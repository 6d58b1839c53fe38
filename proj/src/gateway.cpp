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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "lintcc/gateway.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace lintcc::gateway {

namespace {

using nlohmann::json;

// Trailing whitespace on each line and trailing newlines are insignificant
// for cache identity.
std::string normalize_text(std::string_view text) {
  std::string out;
  std::string line;
  auto flush = [&](bool newline) {
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                             line.back() == '\r'))
      line.pop_back();
    out += line;
    if (newline) out += '\n';
    line.clear();
  };
  for (char c : text) {
    if (c == '\n') {
      flush(true);
    } else {
      line.push_back(c);
    }
  }
  flush(false);
  while (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

std::string iso8601_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* value = std::getenv(name);
  return value != nullptr && *value != '\0' ? value : fallback;
}

}  // namespace

// Bounds in-flight live requests to the configured parallelism.
class RequestSlots {
 public:
  explicit RequestSlots(int n) : available_(n) {}

  void acquire() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return available_ > 0; });
    --available_;
  }

  void release() {
    {
      std::lock_guard lock(mutex_);
      ++available_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  int available_;
};

std::string_view to_string(Role role) {
  switch (role) {
    case Role::kSystem: return "system";
    case Role::kUser: return "user";
    case Role::kAssistant: return "assistant";
  }
  return "user";
}

CompletionRequest CompletionRequest::user_message(std::string model_id,
                                                  std::string text) {
  CompletionRequest req;
  req.model_id = std::move(model_id);
  req.prompt_parts.emplace_back(Role::kUser, std::move(text));
  return req;
}

Mode mode_from_string(const std::string& tag) {
  if (tag == "live") return Mode::kLive;
  if (tag == "record") return Mode::kRecord;
  if (tag == "replay") return Mode::kReplay;
  throw Error("unknown mode '" + tag + "' (expected live, record or replay)");
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::kLive: return "live";
    case Mode::kRecord: return "record";
    case Mode::kReplay: return "replay";
  }
  return "replay";
}

std::string canonical_completion_request(const CompletionRequest& req) {
  // nlohmann::json objects keep keys sorted, which fixes field order.
  json messages = json::array();
  for (const auto& [role, text] : req.prompt_parts)
    messages.push_back(json::array({std::string(to_string(role)), normalize_text(text)}));
  json canon{{"kind", "chat"},
             {"max_tokens", req.max_tokens},
             {"messages", messages},
             {"model", req.model_id},
             {"temperature", req.temperature}};
  return canon.dump();
}

std::string canonical_embedding_request(const std::string& model_id,
                                        const std::string& text) {
  json canon{{"input", normalize_text(text)}, {"kind", "embed"}, {"model", model_id}};
  return canon.dump();
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string render(const PromptTemplate& tpl,
                   const std::map<std::string, std::string>& bindings) {
  std::string out;
  out.reserve(tpl.body.size());
  for (std::size_t i = 0; i < tpl.body.size();) {
    if (tpl.body[i] == '<') {
      bool matched = false;
      for (const std::string& slot : tpl.slots) {
        if (tpl.body.compare(i + 1, slot.size(), slot) == 0 &&
            i + 1 + slot.size() < tpl.body.size() &&
            tpl.body[i + 1 + slot.size()] == '>') {
          auto it = bindings.find(slot);
          if (it == bindings.end()) throw MissingSlotError(slot);
          out += it->second;
          i += slot.size() + 2;
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    out.push_back(tpl.body[i]);
    ++i;
  }
  return out;
}

std::string template_hash(const PromptTemplate& tpl) {
  return sha256_hex(tpl.name + "\x1f" + tpl.body);
}

void ReplayCache::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return;
  std::unique_lock lock(mutex_);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json entry;
    try {
      entry = json::parse(line);
    } catch (const json::parse_error& e) {
      throw SchemaError("bad cache line " + std::to_string(line_no) + " in " +
                            path + ": " + e.what(),
                        "replay-cache");
    }
    entries_[entry.at("key").get<std::string>()] =
        entry.at("response_text").get<std::string>();
  }
}

std::optional<std::string> ReplayCache::lookup(const std::string& key) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ReplayCache::record(const std::string& path, const std::string& key,
                         const std::string& request_digest,
                         const std::string& response_text) {
  std::unique_lock lock(mutex_);
  entries_[key] = response_text;
  std::ofstream out(path, std::ios::app);
  if (!out) throw IoError("cannot append to cache file " + path);
  json entry{{"key", key},
             {"request_digest", request_digest},
             {"response_text", response_text},
             {"recorded_at", iso8601_now()}};
  out << entry.dump() << '\n';
}

std::size_t ReplayCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

GatewayConfig GatewayConfig::from_env() {
  GatewayConfig config;
  config.api_key = env_or("LINTCC_API_KEY", "");
  config.base_url = env_or("LINTCC_BASE_URL", "https://api.openai.com/v1");
  config.model_id = env_or("LINTCC_MODEL_ID", config.model_id);
  config.embed_model_id = env_or("LINTCC_EMBED_MODEL_ID", config.embed_model_id);
  return config;
}

LlmGateway::LlmGateway(GatewayConfig config)
    : config_(std::move(config)),
      slots_(std::make_unique<RequestSlots>(std::max(1, config_.parallelism))) {
  if (!config_.cache_path.empty()) cache_.load(config_.cache_path);
}

LlmGateway::~LlmGateway() = default;

void LlmGateway::set_request_observer(
    std::function<void(const CompletionRequest&)> fn) {
  std::lock_guard lock(observer_mutex_);
  observer_ = std::move(fn);
}

std::string LlmGateway::serve(const std::string& key, const std::string& digest,
                              const std::function<std::string()>& live_call) {
  if (config_.mode == Mode::kReplay) {
    if (auto hit = cache_.lookup(key)) return *hit;
    throw CacheMissError(key);
  }
  if (config_.mode == Mode::kRecord) {
    if (auto hit = cache_.lookup(key)) return *hit;  // resume a partial recording
    std::string response = live_call();
    if (config_.cache_path.empty())
      throw Error("record mode requires a cache path");
    cache_.record(config_.cache_path, key, digest, response);
    return response;
  }
  return live_call();
}

std::string LlmGateway::complete(const CompletionRequest& req) {
  if (req.prompt_parts.empty())
    throw Error("completion request needs at least one prompt part");
  {
    std::lock_guard lock(observer_mutex_);
    if (observer_) observer_(req);
  }
  std::string canonical = canonical_completion_request(req);
  std::string key = sha256_hex(canonical);
  return serve(key, canonical, [&] {
    json messages = json::array();
    for (const auto& [role, text] : req.prompt_parts)
      messages.push_back({{"role", std::string(to_string(role))}, {"content", text}});
    json body{{"model", req.model_id},
              {"temperature", req.temperature},
              {"max_tokens", req.max_tokens},
              {"messages", messages}};
    std::string response = post_json("/chat/completions", body.dump());
    json parsed = json::parse(response, nullptr, false);
    if (parsed.is_discarded() || !parsed.contains("choices") ||
        parsed["choices"].empty())
      throw ProviderError(200, "malformed completion response");
    return parsed["choices"][0]["message"]["content"].get<std::string>();
  });
}

std::vector<double> LlmGateway::embed(const std::string& text) {
  if (normalize_text(text).empty()) throw Error("cannot embed blank text");
  std::string canonical = canonical_embedding_request(config_.embed_model_id, text);
  std::string key = sha256_hex(canonical);
  std::string vector_json = serve(key, canonical, [&] {
    json body{{"model", config_.embed_model_id}, {"input", text}};
    std::string response = post_json("/embeddings", body.dump());
    json parsed = json::parse(response, nullptr, false);
    if (parsed.is_discarded() || !parsed.contains("data") || parsed["data"].empty())
      throw ProviderError(200, "malformed embedding response");
    return parsed["data"][0]["embedding"].dump();
  });
  json arr = json::parse(vector_json);
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) out.push_back(v.get<double>());
  return out;
}

std::string LlmGateway::post_json(const std::string& path, const std::string& body) {
  // base_url = scheme://host[:port][prefix]
  std::size_t scheme_end = config_.base_url.find("://");
  if (scheme_end == std::string::npos)
    throw Error("invalid base URL: " + config_.base_url);
  std::size_t prefix_at = config_.base_url.find('/', scheme_end + 3);
  std::string host = config_.base_url.substr(0, prefix_at);
  std::string prefix =
      prefix_at == std::string::npos ? "" : config_.base_url.substr(prefix_at);

  slots_->acquire();
  struct Release {
    RequestSlots* slots;
    ~Release() { slots->release(); }
  } release{slots_.get()};

  httplib::Headers headers;
  if (!config_.api_key.empty())
    headers.emplace("Authorization", "Bearer " + config_.api_key);

  std::string last_error;
  for (int attempt = 0; attempt < std::max(1, config_.max_retries); ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(
          std::chrono::milliseconds(config_.backoff_ms << (attempt - 1)));
    httplib::Client client(host);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(300, 0);
    auto res = client.Post(prefix + path, headers, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) throw ProviderError(res->status, res->body);
    return res->body;
  }
  throw TransportError("cannot reach " + host + ": " + last_error,
                       std::max(1, config_.max_retries));
}

}  // namespace lintcc::gateway
