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

#ifndef LINTCC_PIPELINE_HPP_
#define LINTCC_PIPELINE_HPP_

#include <map>
#include <string>
#include <vector>

#include "lintcc/corpus.hpp"
#include "lintcc/dsl.hpp"
#include "lintcc/gateway.hpp"
#include "lintcc/instructions.hpp"
#include "lintcc/manifest.hpp"

// The five-stage compiler from one natural-language coding standard to
// aligned linter configurations:
//   1. parse the standard into DSL rules
//   2. select candidate configuration names against general instructions
//   3. configure option names and values against option instructions
//   4. check rule-type / object / semantic alignment
//   5. emit linter-specific configuration text
// Ablation flags disable stage 1 (no_dsl), stage 2 (no_selector) and
// stage 4 (no_checker).

namespace lintcc::pipeline {

using instructions::LlmFormatError;

struct CompileFlags {
  bool no_dsl = false;       // feed raw NL text forward instead of DSL
  bool no_selector = false;  // stage 3 sees every configuration
  bool no_checker = false;   // accept all candidates, verdicts skipped
  bool llm_render = false;   // stage 5 through the model with fallback

  std::vector<std::string> to_strings() const;
};

struct DslCodingStandard {
  std::string standard_id;
  dsl::RuleSet rules;      // empty when nothing parsed or when no_dsl
  std::string stage1_raw;  // model response (audit); the NL text under no_dsl
  bool empty_standard = false;
};

struct Assignment {
  std::string option_name;
  std::string option_value;
  // The instruction rule this assignment matched; placeholder rules are
  // stored with the extracted value substituted in.
  dsl::DslRule matched_rule;
  int standard_rule_index = -1;  // 1-based into the DSL standard, -1 unknown
};

struct CandidateConfiguration {
  std::string config_name;
  std::vector<Assignment> assignments;
  std::vector<dsl::DslRule> matched_general_rules;
  int standard_rule_index = -1;
};

enum class Verdict { kPass, kFail, kSkipped };

std::string to_tag(Verdict verdict);
Verdict verdict_from_tag(const std::string& tag);

struct AlignmentVerdicts {
  Verdict rule_type = Verdict::kSkipped;
  Verdict objects = Verdict::kSkipped;
  Verdict semantics = Verdict::kSkipped;
  std::vector<std::string> notes;
};

struct AlignedConfiguration {
  CandidateConfiguration candidate;
  AlignmentVerdicts verdicts;
  bool accepted = false;
};

struct CompilationResult {
  std::string standard_id;
  CompileFlags flags;
  DslCodingStandard dsl;
  std::vector<std::string> selected_names;
  std::vector<CandidateConfiguration> candidates;
  std::vector<AlignedConfiguration> aligned;
  std::map<std::string, std::string> emitted;  // target tag -> document text
  std::vector<std::string> warnings;
  manifest::RunManifest run_manifest;
  // Wall-clock per stage; never persisted, so replayed artifacts stay
  // byte-identical.
  std::map<std::string, double> stage_timings_ms;
};

class Compiler {
 public:
  Compiler(gateway::LlmGateway& gw, const instructions::InstructionSet& iset);

  DslCodingStandard stage1_parse_standard(const corpus::CodingStandardDoc& doc,
                                          std::vector<std::string>* warnings = nullptr);

  // Returns names filtered to the instruction set, deduplicated, in response
  // order. Hallucinated names are dropped with a warning.
  std::vector<std::string> stage2_select_names(
      const DslCodingStandard& dsl_standard,
      std::vector<std::string>* warnings = nullptr);

  std::vector<CandidateConfiguration> stage3_configure_options(
      const DslCodingStandard& dsl_standard, const std::vector<std::string>& names,
      std::vector<std::string>* warnings = nullptr);

  // rule_type and exact object overlap are checked locally; the model is
  // consulted for fuzzy object overlap and semantics. Candidates fail closed
  // on model errors.
  std::vector<AlignedConfiguration> stage4_check_alignment(
      const DslCodingStandard& dsl_standard,
      const std::vector<CandidateConfiguration>& candidates,
      std::vector<std::string>* warnings = nullptr);

  // Runs stages 1-5. `targets` hold emitter tags ("checkstyle", "eslint").
  CompilationResult compile(const corpus::CodingStandardDoc& doc,
                            const std::vector<std::string>& targets,
                            const CompileFlags& flags = {});

  const instructions::InstructionSet& instruction_set() const { return iset_; }

 private:
  std::string standard_repr(const DslCodingStandard& dsl_standard) const;
  std::string ask(const std::string& prompt_text);
  std::string ask_with_repair(const std::string& prompt_text,
                              const std::string& first_response,
                              const std::string& error);

  gateway::LlmGateway& gateway_;
  const instructions::InstructionSet& iset_;
};

// Audit-trail JSON artifact for one standard (timings excluded).
void save_result(const std::string& path, const CompilationResult& result);
nlohmann::ordered_json result_to_json(const CompilationResult& result);

}  // namespace lintcc::pipeline

#endif  // LINTCC_PIPELINE_HPP_
