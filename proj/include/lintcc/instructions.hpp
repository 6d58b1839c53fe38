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

#ifndef LINTCC_INSTRUCTIONS_HPP_
#define LINTCC_INSTRUCTIONS_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lintcc/corpus.hpp"
#include "lintcc/dsl.hpp"
#include "lintcc/gateway.hpp"
#include "lintcc/manifest.hpp"

// Compiles each linter configuration's documentation into DSL instructions:
// general rules from the description plus one instruction per option. The
// resulting InstructionSet is what the pipeline matches coding standards
// against.

namespace lintcc::instructions {

// A model response that could not be parsed even after one repair re-prompt.
class LlmFormatError : public Error {
 public:
  explicit LlmFormatError(const std::string& what) : Error(what) {}
};

enum class OptionInstructionKind { kPerValue, kPlaceholder, kObjectSelector };

std::string to_tag(OptionInstructionKind kind);
OptionInstructionKind option_kind_from_tag(const std::string& tag);

struct OptionInstruction {
  std::string option_name;
  OptionInstructionKind kind = OptionInstructionKind::kPlaceholder;
  std::string data_type_name;  // from the option doc, for value validation
  // kPerValue: one rule per literal, in the doc's literal order.
  std::vector<std::pair<std::string, dsl::DslRule>> value_rules;
  // kPlaceholder / kObjectSelector: one rule containing {option_name}.
  std::optional<dsl::DslRule> rule;

  const dsl::DslRule* rule_for_value(const std::string& literal) const;
};

struct ConfigInstruction {
  std::string config_name;
  std::vector<dsl::DslRule> general_rules;
  std::vector<OptionInstruction> option_instructions;
  corpus::LinterId linter;

  const OptionInstruction* find_option(const std::string& name) const;
};

struct InstructionSet {
  corpus::LinterId linter;
  std::vector<std::string> order;  // config order, fixes file layout
  std::map<std::string, ConfigInstruction> instructions;
  manifest::RunManifest build_manifest;

  bool contains(const std::string& config_name) const;
  const ConfigInstruction* find(const std::string& config_name) const;
};

struct BuildReport {
  // (config_name, reason) for configs whose build failed entirely.
  std::vector<std::pair<std::string, std::string>> failures;
  // Non-fatal issues, e.g. dropped unparseable rule lines.
  std::vector<std::string> warnings;
};

class InstructionBuilder {
 public:
  explicit InstructionBuilder(gateway::LlmGateway& gw) : gateway_(gw) {}

  // One verdict per description sentence, from a fixed classification
  // prompt parsed as a strict `index: yes|no` list.
  std::vector<bool> classify_rule_sentences(const corpus::LinterConfigDoc& doc);

  // DSL rules for every sentence classified as a rule. Lines that stay
  // unparseable after one repair re-prompt are dropped and reported.
  std::vector<dsl::DslRule> build_general_instruction(
      const corpus::LinterConfigDoc& doc, const std::vector<bool>& classification,
      BuildReport* report = nullptr);

  OptionInstruction build_option_instruction(const corpus::LinterConfigDoc& doc,
                                             const corpus::OptionDoc& opt,
                                             std::vector<dsl::DslRule> general_rules);

  ConfigInstruction build_config(const corpus::LinterConfigDoc& doc,
                                 BuildReport* report = nullptr);

  // Builds every config (concurrently up to the gateway's bound) and keeps
  // the successes; failures land in the report.
  InstructionSet build_instruction_set(const std::vector<corpus::LinterConfigDoc>& docs,
                                       BuildReport* report = nullptr);

 private:
  std::string ask(const std::string& prompt_text);
  std::string ask_with_repair(const std::string& prompt_text,
                              const std::string& first_response,
                              const std::string& error);

  gateway::LlmGateway& gateway_;
};

void save_instruction_set(const std::string& path, const InstructionSet& iset);
InstructionSet load_instruction_set(const std::string& path);

// Hash of the canonical serialization (manifest excluded), pinned into
// compile manifests.
std::string instruction_set_hash(const InstructionSet& iset);

}  // namespace lintcc::instructions

#endif  // LINTCC_INSTRUCTIONS_HPP_
