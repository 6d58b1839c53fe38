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

#ifndef LINTCC_MANIFEST_HPP_
#define LINTCC_MANIFEST_HPP_

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "lintcc/gateway.hpp"

namespace lintcc::manifest {

// Embedded in every artifact file so outputs identify the model, prompts,
// instruction set and flags that produced them. The timestamp is recorded
// only for live and record runs; replay outputs must be byte-identical
// across runs.
struct RunManifest {
  std::string model_id;
  std::string mode;
  std::vector<std::string> flags;
  std::map<std::string, std::string> template_hashes;
  std::string instruction_set_hash;
  std::string timestamp;

  nlohmann::ordered_json to_json() const;
  static RunManifest from_json(const nlohmann::ordered_json& doc);

  bool operator==(const RunManifest&) const = default;
};

RunManifest make_manifest(const gateway::GatewayConfig& config,
                          std::vector<std::string> flags = {},
                          std::string instruction_set_hash = {});

}  // namespace lintcc::manifest

#endif  // LINTCC_MANIFEST_HPP_
