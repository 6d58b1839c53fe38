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

#ifndef LINTCC_PROMPTS_HPP_
#define LINTCC_PROMPTS_HPP_

#include <map>
#include <string>

#include "lintcc/gateway.hpp"

// The fixed prompt templates (one worked example each) used by the
// instruction builder, the compilation pipeline and the baselines. They are
// embedded in the binary so a run is reproducible from the repo alone; run
// manifests pin their hashes.

namespace lintcc::prompts {

// Plain-text description of the rule DSL bound into the <grammar> slot.
const std::string& grammar_text();

// Registry lookup by template name. Known names:
//   classify_sentences, sentence_to_dsl, option_per_value,
//   option_placeholder, option_object_selector, stage1_standard_to_dsl,
//   stage2_select_names, stage3_configure_options, stage4_objects,
//   stage4_semantics, stage5_render, baseline_generate
// Throws Error for unknown names.
const gateway::PromptTemplate& prompt(const std::string& name);

// name -> sha256 for every registered template, for run manifests.
std::map<std::string, std::string> all_template_hashes();

// Follow-up user turn appended when a response failed to parse.
std::string repair_message(const std::string& error);

}  // namespace lintcc::prompts

#endif  // LINTCC_PROMPTS_HPP_
