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

#include "lintcc/prompts.hpp"

#include <array>

namespace lintcc::prompts {

namespace {

using gateway::PromptTemplate;

constexpr const char* kGrammarText = R"(Rule DSL grammar:
- A rule set is one or more rules separated by `;`.
- A rule is `Mandatory:` or `Optional:` followed by one constraint, optionally
  followed by `Except` and one or more exception constraints separated by commas.
- A constraint takes one of five forms:
  1. [TermList] operator [TermList] ...  (operators are free text such as
     `have`, `is`, `is not`, `matches`, `>`; a lone [TermList] means it must
     be present)
  2. No <constraint>
  3. Order of [TermList] is [TermList]  (or `is not`)
  4. Number of [TermList] operator [TermList]
  5. if <constraint> then <constraint>
- A TermList is a comma-separated list of programming-language terms in
  square brackets, e.g. [@param, @return, @throws].
- `{name}` marks a placeholder for the linter option called `name`.)";

const std::array<PromptTemplate, 12>& registry() {
  static const std::array<PromptTemplate, 12> kTemplates = {{
      {"classify_sentences",
       {"sentences"},
       R"(You label sentences from linter documentation.
Decide for each numbered sentence whether it states a coding rule that a
linter could enforce. Code snippets, usage examples and explanations are not
rules. Respond with one line per sentence, exactly `<index>: yes` or
`<index>: no`.

Example sentences:
0: Checks for braces around code blocks.
1: `if (x) y();`
Example response:
0: yes
1: no

Sentences:
<sentences>)"},

      {"sentence_to_dsl",
       {"grammar", "sentence"},
       R"(You translate one coding-rule sentence into the rule DSL below.

<grammar>

Write one DSL rule per line for the sentence; a sentence may yield several
rules. If the sentence expresses no rule, respond with `none`.

Example sentence:
Checks for braces around code blocks.
Example response:
Mandatory: [CodeBlock] have [Brace]

Sentence:
<sentence>)"},

      {"option_per_value",
       {"grammar", "config_name", "option_name", "option_description", "values"},
       R"(You translate one linter option into DSL rules, one per value.

<grammar>

The option below has a finite set of values. For each value write exactly one
line `value: DSL rule` describing the behavior when the option is set to that
value.

Example option:
Configuration: NeedBraces
Option: allowSingleLineStatement -- Allow single-line statements without braces.
Values: true, false
Example response:
true: Optional: [SingleLineStatement] not have [Brace]
false: Mandatory: [SingleLineStatement] have [Brace]

Option:
Configuration: <config_name>
Option: <option_name> -- <option_description>
Values: <values>)"},

      {"option_placeholder",
       {"grammar", "config_name", "option_name", "option_description"},
       R"(You translate one linter option into a single DSL rule.

<grammar>

The option below takes an open-ended value. Write exactly one DSL rule
describing the behavior it controls, with the placeholder {<option_name>}
where the configured value would appear.

Example option:
Configuration: LineLength
Option: max -- The maximum allowed line length.
Example response:
Mandatory: [LineLength] <= {max}

Option:
Configuration: <config_name>
Option: <option_name> -- <option_description>)"},

      {"option_object_selector",
       {"grammar", "config_name", "option_name", "option_description",
        "general_rules"},
       R"(You translate one linter option into a single DSL rule.

<grammar>

The option below selects which objects the configuration checks. Write
exactly one DSL rule for the configuration with the checked objects replaced
by the placeholder {<option_name>}.

Example:
Configuration: NeedBraces, option tokens
General rule: Mandatory: [CodeBlock] have [Brace]
Example response:
Mandatory: {tokens} have [Brace]

General rules of the configuration:
<general_rules>

Option:
Configuration: <config_name>
Option: <option_name> -- <option_description>)"},

      {"stage1_standard_to_dsl",
       {"grammar", "standard_title", "standard_text"},
       R"(You compile natural-language coding standards into the rule DSL below.

<grammar>

First decide which sentences state coding rules (skip code examples and
explanations), then write one DSL rule per line for every rule you find. A
sentence may yield several rules. If no sentence states a rule, respond with
`none`.

Example standard:
Braces are used with if, else, for, do and while statements.
Example response:
Mandatory: [if statement, else statement, for statement, do statement, while statement] have [Brace]

Coding standard: <standard_title>
<standard_text>)"},

      {"stage2_select_names",
       {"general_instructions", "standard_dsl"},
       R"(You select linter configurations whose general behavior matches a DSL
coding standard. Below are all available configurations with their general
DSL rules, then the coding standard. Respond with the matching configuration
names, one per line, or `none`. Only name configurations from the list.

Example standard rule:
Mandatory: [CodeBlock] have [Brace]
Example response:
NeedBraces

Configurations:
<general_instructions>

Coding standard rules:
<standard_dsl>)"},

      {"stage3_configure_options",
       {"standard_dsl", "option_instructions"},
       R"(You configure linter options by matching DSL option rules against a DSL
coding standard. Respond with one line per decision:
`use <configuration> for rule <k>` when a configuration's general rules match
numbered standard rule k and no option needs to be set.
`set <configuration>.<option> = <value> for rule <k>` when rule k determines
an option value. For option rules containing a {placeholder}, extract the
concrete value from the standard rule; quote it exactly and separate multiple
values with commas. Respond `none` if nothing matches.

Example standard rule:
1: Mandatory: Number of [BlankLine] between [PACKAGE_DEF, CLASS_DEF] is [1]
Example response:
set EmptyLineSeparator.tokens = PACKAGE_DEF, CLASS_DEF for rule 1

Coding standard rules:
<standard_dsl>

Candidate configurations:
<option_instructions>)"},

      {"stage4_objects",
       {"standard_rule", "standard_objects", "candidate_rule", "candidate_objects"},
       R"(You compare the checked objects of a coding-standard rule with the checked
objects of a linter configuration rule. They need not be written identically,
but they must denote the same program elements.

Standard rule: <standard_rule>
Standard objects: <standard_objects>
Configuration rule: <candidate_rule>
Configuration objects: <candidate_objects>

Do they denote the same checked objects? Respond `yes: <reason>` or
`no: <reason>`.)"},

      {"stage4_semantics",
       {"standard_rule", "config_name", "candidate_rules"},
       R"(You verify that a linter configuration enforces the same requirement as a
coding-standard rule.

Standard rule:
<standard_rule>

Configuration <config_name> was matched with:
<candidate_rules>

Does the configuration enforce the same requirement? Respond `yes: <reason>`
or `no: <reason>`.)"},

      {"stage5_render",
       {"target", "format_example", "configurations"},
       R"(You convert verified linter configurations into the <target> format.

Example configurations:
PackageDeclaration (no options)
Example output:
<format_example>

Configurations:
<configurations>

Respond with only the configuration file content.)"},

      {"baseline_generate",
       {"linter", "tool_information", "standard_title", "standard_text"},
       R"(You generate <linter> configurations for a natural-language coding
standard.

<tool_information>

Respond with one line per decision:
`use <configuration name>` to enable a configuration.
`set <configuration name>.<option> = <value>` to set one of its options.
Respond `none` if the standard needs no configuration.

Example standard:
Braces are used with if statements.
Example response:
use NeedBraces

Coding standard: <standard_title>
<standard_text>)"},
  }};
  return kTemplates;
}

}  // namespace

const std::string& grammar_text() {
  static const std::string kText = kGrammarText;
  return kText;
}

const gateway::PromptTemplate& prompt(const std::string& name) {
  for (const PromptTemplate& tpl : registry())
    if (tpl.name == name) return tpl;
  throw Error("unknown prompt template: " + name);
}

std::map<std::string, std::string> all_template_hashes() {
  std::map<std::string, std::string> out;
  for (const PromptTemplate& tpl : registry())
    out[tpl.name] = gateway::template_hash(tpl);
  return out;
}

std::string repair_message(const std::string& error) {
  return "Your previous response could not be used: " + error +
         "\nRespond again and follow the required format exactly.";
}

}  // namespace lintcc::prompts
