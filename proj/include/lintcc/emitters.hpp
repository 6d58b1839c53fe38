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

#ifndef LINTCC_EMITTERS_HPP_
#define LINTCC_EMITTERS_HPP_

#include <functional>
#include <string>
#include <vector>

#include "lintcc/gateway.hpp"
#include "lintcc/pipeline.hpp"

// Renders accepted configurations into Checkstyle XML and ESLint JSON.
// Deterministic renderers are the default; the model-backed renderer is kept
// behind llm_render with a deterministic fallback.

namespace lintcc::emitters {

class UnacceptedCandidateError : public Error {
 public:
  explicit UnacceptedCandidateError(const std::string& name)
      : Error("configuration '" + name + "' was not accepted by the checker") {}
};

class TypeCoercionError : public Error {
 public:
  TypeCoercionError(const std::string& option, const std::string& value,
                    const std::string& type)
      : Error("value '" + value + "' for option '" + option +
              "' cannot be coerced to " + type) {}
};

enum class Target { kCheckstyleXml, kEslintJson };

std::string to_tag(Target target);           // "checkstyle" / "eslint"
Target target_from_tag(const std::string&);  // throws Error on unknown tags

struct EmittedConfig {
  Target target = Target::kCheckstyleXml;
  std::string text;
  bool validated = false;
};

// Maps (config_name, option_name) to the option's data-type tag ("boolean",
// "integer", "set", ...). Unknown options default to "string".
using OptionTypeFn =
    std::function<std::string(const std::string& config, const std::string& option)>;

OptionTypeFn option_types_from(const instructions::InstructionSet& iset);

// Checkstyle document: XML prolog + DOCTYPE + <module name="Checker">, with
// tree-level checks nested under one TreeWalker module. Deterministic: input
// order, properties in assignment order, all values escaped.
EmittedConfig render_checkstyle(const std::vector<pipeline::AlignedConfiguration>& configs);

// ESLint document: {"rules": {name: ["error", {option: value, ...}]}} with
// typed values and stable key order.
EmittedConfig render_eslint(const std::vector<pipeline::AlignedConfiguration>& configs,
                            const OptionTypeFn& option_type);

EmittedConfig render(Target target,
                     const std::vector<pipeline::AlignedConfiguration>& configs,
                     const OptionTypeFn& option_type);

struct ValidationResult {
  bool ok = false;
  std::vector<std::string> diagnostics;
};

// Checkstyle: well-formed XML, only module/property elements, root module
// named Checker. ESLint: JSON object whose "rules" values are a severity
// string or [severity, options...].
ValidationResult validate_emitted(const EmittedConfig& config);

// Model-backed stage 5: the response must pass validate_emitted, with one
// repair re-prompt, then falls back to the deterministic renderer.
EmittedConfig llm_render(gateway::LlmGateway& gw, Target target,
                         const std::vector<pipeline::AlignedConfiguration>& configs,
                         const OptionTypeFn& option_type,
                         std::vector<std::string>* warnings = nullptr);

// Minimal XML reader for the restricted Checkstyle dialect (elements,
// attributes, comments, prolog and doctype). Used by the validator and the
// re-parse oracles in tests.
struct XmlNode {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<XmlNode> children;

  const std::string* attribute(const std::string& key) const;
};

XmlNode parse_xml(const std::string& text);  // throws Error on malformed input

}  // namespace lintcc::emitters

#endif  // LINTCC_EMITTERS_HPP_
