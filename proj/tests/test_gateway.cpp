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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "lintcc/gateway.hpp"
#include "support/test_http.hpp"

using namespace lintcc;
using namespace lintcc::gateway;

namespace {

std::string temp_cache(const std::string& name) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove(path);
  return path.string();
}

CompletionRequest sample_request() {
  return CompletionRequest::user_message("test-model", "Classify this sentence.");
}

}  // namespace

TEST_CASE("cache key canonicalization") {
  CompletionRequest a = sample_request();
  CompletionRequest b = sample_request();
  b.prompt_parts[0].second = "Classify this sentence.   \n";
  CHECK(canonical_completion_request(a) == canonical_completion_request(b));

  CompletionRequest hotter = sample_request();
  hotter.temperature = 0.7;
  CHECK(canonical_completion_request(a) != canonical_completion_request(hotter));

  CompletionRequest other_model = sample_request();
  other_model.model_id = "test-model-2";
  CHECK(canonical_completion_request(a) != canonical_completion_request(other_model));

  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("replay mode: determinism and cache miss") {
  std::string cache_path = temp_cache("gw_replay.jsonl");
  CompletionRequest req = sample_request();
  std::string key = sha256_hex(canonical_completion_request(req));
  {
    std::ofstream out(cache_path);
    out << R"({"key":")" << key
        << R"(","request_digest":"x","response_text":"0: yes","recorded_at":"t"})"
        << "\n";
  }
  GatewayConfig config;
  config.mode = Mode::kReplay;
  config.cache_path = cache_path;
  LlmGateway gw(config);
  CHECK(gw.complete(req) == "0: yes");
  CHECK(gw.complete(req) == "0: yes");

  CompletionRequest missing = sample_request();
  missing.prompt_parts[0].second = "something else";
  CHECK_THROWS_AS(gw.complete(missing), CacheMissError);
}

TEST_CASE("record then replay returns identical bytes") {
  testing::LocalModelServer server(
      [](const std::string& prompt) { return "echo: " + prompt; });
  std::string cache_path = temp_cache("gw_record.jsonl");

  GatewayConfig config;
  config.mode = Mode::kRecord;
  config.base_url = server.base_url();
  config.cache_path = cache_path;
  std::string live_response;
  {
    LlmGateway gw(config);
    live_response = gw.complete(sample_request());
    CHECK(live_response == "echo: Classify this sentence.");
  }
  config.mode = Mode::kReplay;
  LlmGateway replay(config);
  CHECK(replay.complete(sample_request()) == live_response);

  // Embeddings go through the same cache.
  config.mode = Mode::kRecord;
  LlmGateway recorder(config);
  auto v1 = recorder.embed("package statements");
  config.mode = Mode::kReplay;
  LlmGateway replay2(config);
  auto v2 = replay2.embed("package statements");
  CHECK(v1 == v2);

  double self = 0.0, norm = 0.0;
  for (double x : v1) {
    self += x * x;
    norm += x * x;
  }
  CHECK(std::abs(self / norm - 1.0) < 1e-9);  // cosine(v, v) == 1
}

TEST_CASE("embed rejects blank text") {
  GatewayConfig config;
  config.mode = Mode::kReplay;
  LlmGateway gw(config);
  CHECK_THROWS_AS(gw.embed("   \n"), Error);
}

TEST_CASE("transport errors exhaust retries") {
  GatewayConfig config;
  config.mode = Mode::kLive;
  config.base_url = "http://127.0.0.1:1/v1";  // nothing listens here
  config.max_retries = 2;
  config.backoff_ms = 1;
  LlmGateway unreachable(config);
  CHECK_THROWS_AS(unreachable.complete(sample_request()), TransportError);
}

TEST_CASE("provider errors pass the status through") {
  testing::LocalModelServer server([](const std::string&) { return "ok"; });
  GatewayConfig config;
  config.mode = Mode::kLive;
  config.base_url = server.base_url();
  LlmGateway gw(config);
  CHECK(gw.complete(sample_request()) == "ok");

  server.set_completion_status(503);
  try {
    gw.complete(sample_request());
    FAIL("expected ProviderError");
  } catch (const ProviderError& e) {
    CHECK(e.status() == 503);
  }
}

TEST_CASE("render: substitution, missing slots, injectivity") {
  PromptTemplate tpl{"t", {"x"}, "A <x> B"};
  CHECK(render(tpl, {{"x", "1"}}) == "A 1 B");
  CHECK_THROWS_AS(render(tpl, {}), MissingSlotError);
  try {
    render(PromptTemplate{"t2", {"x", "y"}, "<y> then <x>"}, {{"y", "1"}});
    FAIL("expected MissingSlotError");
  } catch (const MissingSlotError& e) {
    CHECK(e.slot() == "x");  // first unbound slot in body order is reported
  }

  // Injectivity over distinct delimiter-escaped bindings.
  PromptTemplate pair_tpl{"p", {"a", "b"}, "[<a>|<b>]"};
  std::mt19937 rng(99);
  std::set<std::string> rendered;
  std::set<std::pair<std::string, std::string>> seen;
  for (int i = 0; i < 200; ++i) {
    std::string a = "v" + std::to_string(rng() % 50);
    std::string b = "w" + std::to_string(rng() % 50);
    if (!seen.insert({a, b}).second) continue;
    CHECK(rendered.insert(render(pair_tpl, {{"a", a}, {"b", b}})).second);
  }

  // Non-slot angle brackets in the body are left alone.
  PromptTemplate xmlish{"x", {"name"}, "<module name=\"<name>\"/>"};
  CHECK(render(xmlish, {{"name", "Checker"}}) == "<module name=\"Checker\"/>");
}

TEST_CASE("template hash is stable and content-sensitive") {
  PromptTemplate tpl{"t", {"x"}, "A <x> B"};
  CHECK(template_hash(tpl) == template_hash(tpl));
  PromptTemplate tweaked = tpl;
  tweaked.body += "!";
  CHECK(template_hash(tpl) != template_hash(tweaked));
}
