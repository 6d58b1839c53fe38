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

#include "lintcc/manifest.hpp"

#include <ctime>

#include "lintcc/prompts.hpp"

namespace lintcc::manifest {

nlohmann::ordered_json RunManifest::to_json() const {
  return nlohmann::ordered_json{
      {"model_id", model_id},
      {"mode", mode},
      {"flags", flags},
      {"template_hashes", template_hashes},
      {"instruction_set_hash", instruction_set_hash},
      {"timestamp", timestamp}};
}

RunManifest RunManifest::from_json(const nlohmann::ordered_json& doc) {
  RunManifest m;
  m.model_id = doc.value("model_id", "");
  m.mode = doc.value("mode", "");
  if (doc.contains("flags"))
    m.flags = doc["flags"].get<std::vector<std::string>>();
  if (doc.contains("template_hashes"))
    m.template_hashes = doc["template_hashes"].get<std::map<std::string, std::string>>();
  m.instruction_set_hash = doc.value("instruction_set_hash", "");
  m.timestamp = doc.value("timestamp", "");
  return m;
}

RunManifest make_manifest(const gateway::GatewayConfig& config,
                          std::vector<std::string> flags,
                          std::string instruction_set_hash) {
  RunManifest m;
  m.model_id = config.model_id;
  m.mode = std::string(gateway::to_string(config.mode));
  m.flags = std::move(flags);
  m.template_hashes = prompts::all_template_hashes();
  m.instruction_set_hash = std::move(instruction_set_hash);
  if (config.mode != gateway::Mode::kReplay) {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    m.timestamp = buf;
  }
  return m;
}

}  // namespace lintcc::manifest
