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

#include "lintcc/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>

#include "lintcc/emitters.hpp"
#include "lintcc/prompts.hpp"
#include "strutil.hpp"

namespace lintcc::pipeline {

namespace {

using nlohmann::ordered_json;
using strutil::is_none;
using strutil::join;
using strutil::nonblank_lines;
using strutil::trim;

void warn(std::vector<std::string>* warnings, const std::string& message) {
  if (warnings) warnings->push_back(message);
}

std::string numbered_rules(const dsl::RuleSet& rules) {
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < rules.rules.size(); ++i)
    lines.push_back(std::to_string(i + 1) + ": " + dsl::format_rule(rules.rules[i]));
  return join(lines, "\n");
}

// Lowercased term texts of every checked object in the rule.
std::set<std::string> object_term_set(const dsl::DslRule& rule) {
  std::set<std::string> out;
  for (const dsl::TermList& list : dsl::extract_checked_objects(rule))
    for (const dsl::Term& term : list.terms) out.insert(strutil::lowercase(term.text()));
  return out;
}

std::string object_set_text(const std::set<std::string>& objects) {
  std::vector<std::string> parts(objects.begin(), objects.end());
  return parts.empty() ? "(none)" : join(parts, ", ");
}

// `yes: reason` / `no: reason`; returns nullopt on anything else.
std::optional<bool> parse_yes_no(const std::string& response) {
  std::string text = trim(response);
  std::size_t cut = text.find_first_of(":\n ");
  std::string head = strutil::lowercase(cut == std::string::npos ? text : text.substr(0, cut));
  if (head == "yes") return true;
  if (head == "no") return false;
  return std::nullopt;
}

// One stage-3 response line.
struct Stage3Line {
  bool is_use = false;
  std::string config_name;
  std::string option_name;
  std::string value;
  int rule_index = -1;
};

std::optional<Stage3Line> parse_stage3_line(const std::string& line, std::string* error) {
  Stage3Line out;
  std::string rest;
  if (line.rfind("use ", 0) == 0) {
    out.is_use = true;
    rest = line.substr(4);
  } else if (line.rfind("set ", 0) == 0) {
    rest = line.substr(4);
  } else {
    *error = "line must start with 'use' or 'set': " + line;
    return std::nullopt;
  }

  std::size_t suffix = rest.rfind(" for rule ");
  if (suffix != std::string::npos) {
    std::string index_text = trim(rest.substr(suffix + 10));
    try {
      out.rule_index = std::stoi(index_text);
    } catch (...) {
      *error = "bad rule index: " + line;
      return std::nullopt;
    }
    rest = trim(rest.substr(0, suffix));
  } else {
    rest = trim(rest);
  }

  if (out.is_use) {
    if (rest.empty()) {
      *error = "missing configuration name: " + line;
      return std::nullopt;
    }
    out.config_name = rest;
    return out;
  }

  std::size_t eq = rest.find('=');
  if (eq == std::string::npos) {
    *error = "set line without '=': " + line;
    return std::nullopt;
  }
  std::string target = trim(rest.substr(0, eq));
  out.value = trim(rest.substr(eq + 1));
  std::size_t dot = target.find('.');
  if (dot == std::string::npos) {
    *error = "set line must name <config>.<option>: " + line;
    return std::nullopt;
  }
  out.config_name = trim(target.substr(0, dot));
  out.option_name = trim(target.substr(dot + 1));
  if (out.config_name.empty() || out.option_name.empty() || out.value.empty()) {
    *error = "incomplete set line: " + line;
    return std::nullopt;
  }
  return out;
}

bool value_matches_type(const std::string& value, const std::string& type) {
  if (type == "boolean") return value == "true" || value == "false";
  if (type == "integer") {
    if (value.empty()) return false;
    std::size_t i = value[0] == '-' ? 1 : 0;
    if (i == value.size()) return false;
    return std::all_of(value.begin() + i, value.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
  }
  return true;  // string, regex, set, enum (finite enums go through per_value)
}

ordered_json candidate_to_json(const CandidateConfiguration& candidate) {
  ordered_json assignments = ordered_json::array();
  for (const Assignment& a : candidate.assignments)
    assignments.push_back(ordered_json{{"option_name", a.option_name},
                                       {"option_value", a.option_value},
                                       {"standard_rule_index", a.standard_rule_index},
                                       {"matched_rule", dsl::format_rule(a.matched_rule)}});
  ordered_json general = ordered_json::array();
  for (const dsl::DslRule& rule : candidate.matched_general_rules)
    general.push_back(dsl::format_rule(rule));
  return ordered_json{{"config_name", candidate.config_name},
                      {"standard_rule_index", candidate.standard_rule_index},
                      {"matched_general_rules", general},
                      {"assignments", assignments}};
}

}  // namespace

std::vector<std::string> CompileFlags::to_strings() const {
  std::vector<std::string> out;
  if (no_dsl) out.push_back("no-dsl");
  if (no_selector) out.push_back("no-selector");
  if (no_checker) out.push_back("no-checker");
  if (llm_render) out.push_back("llm-render");
  return out;
}

std::string to_tag(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kSkipped: return "skipped";
  }
  return "skipped";
}

Verdict verdict_from_tag(const std::string& tag) {
  if (tag == "pass") return Verdict::kPass;
  if (tag == "fail") return Verdict::kFail;
  if (tag == "skipped") return Verdict::kSkipped;
  throw SchemaError("unknown verdict '" + tag + "'", "verdicts");
}

Compiler::Compiler(gateway::LlmGateway& gw, const instructions::InstructionSet& iset)
    : gateway_(gw), iset_(iset) {}

std::string Compiler::ask(const std::string& prompt_text) {
  return gateway_.complete(gateway::CompletionRequest::user_message(
      gateway_.config().model_id, prompt_text));
}

std::string Compiler::ask_with_repair(const std::string& prompt_text,
                                      const std::string& first_response,
                                      const std::string& error) {
  gateway::CompletionRequest req;
  req.model_id = gateway_.config().model_id;
  req.prompt_parts.emplace_back(gateway::Role::kUser, prompt_text);
  req.prompt_parts.emplace_back(gateway::Role::kAssistant, first_response);
  req.prompt_parts.emplace_back(gateway::Role::kUser, prompts::repair_message(error));
  return gateway_.complete(req);
}

std::string Compiler::standard_repr(const DslCodingStandard& dsl_standard) const {
  if (!dsl_standard.rules.rules.empty()) return numbered_rules(dsl_standard.rules);
  return dsl_standard.stage1_raw;
}

DslCodingStandard Compiler::stage1_parse_standard(const corpus::CodingStandardDoc& doc,
                                                  std::vector<std::string>* warnings) {
  DslCodingStandard out;
  out.standard_id = doc.id;
  std::string prompt_text = gateway::render(
      prompts::prompt("stage1_standard_to_dsl"),
      {{"grammar", prompts::grammar_text()},
       {"standard_title", doc.title},
       {"standard_text", join(doc.sentences, "\n")}});

  auto parse_lines = [](const std::string& text, std::vector<std::string>* bad) {
    std::vector<dsl::DslRule> rules;
    std::vector<std::string> lines = nonblank_lines(text);
    if (is_none(lines)) return rules;
    for (const std::string& line : lines) {
      try {
        dsl::RuleSet rs = dsl::parse_rule_set(line);
        rules.insert(rules.end(), rs.rules.begin(), rs.rules.end());
      } catch (const Error& e) {
        bad->push_back(line + "  <- " + e.what());
      }
    }
    return rules;
  };

  std::string response = ask(prompt_text);
  std::vector<std::string> bad;
  std::vector<dsl::DslRule> rules = parse_lines(response, &bad);
  if (!bad.empty()) {
    response = ask_with_repair(prompt_text, response,
                               "these lines are not valid DSL:\n" + join(bad, "\n"));
    bad.clear();
    rules = parse_lines(response, &bad);
    for (const std::string& line : bad)
      warn(warnings, "stage1: dropping unparseable rule line: " + line);
  }
  out.stage1_raw = response;
  out.rules.rules = std::move(rules);
  out.empty_standard = out.rules.rules.empty();
  return out;
}

std::vector<std::string> Compiler::stage2_select_names(
    const DslCodingStandard& dsl_standard, std::vector<std::string>* warnings) {
  std::vector<std::string> instructions_text;
  for (const std::string& name : iset_.order) {
    const instructions::ConfigInstruction& config = iset_.instructions.at(name);
    std::vector<std::string> rules;
    for (const dsl::DslRule& rule : config.general_rules)
      rules.push_back(dsl::format_rule(rule));
    instructions_text.push_back(
        name + ": " + (rules.empty() ? "(no general rules)" : join(rules, "; ")));
  }
  std::string prompt_text = gateway::render(
      prompts::prompt("stage2_select_names"),
      {{"general_instructions", join(instructions_text, "\n")},
       {"standard_dsl", standard_repr(dsl_standard)}});

  std::string response = ask(prompt_text);
  std::vector<std::string> lines = nonblank_lines(response);
  std::vector<std::string> selected;
  if (is_none(lines)) return selected;
  for (const std::string& line : lines) {
    if (!iset_.contains(line)) {
      warn(warnings, "stage2: dropping unknown configuration '" + line + "'");
      continue;
    }
    if (std::find(selected.begin(), selected.end(), line) == selected.end())
      selected.push_back(line);
  }
  return selected;
}

std::vector<CandidateConfiguration> Compiler::stage3_configure_options(
    const DslCodingStandard& dsl_standard, const std::vector<std::string>& names,
    std::vector<std::string>* warnings) {
  std::vector<CandidateConfiguration> candidates;
  if (names.empty()) return candidates;

  std::string instructions_text;
  for (const std::string& name : names) {
    const instructions::ConfigInstruction* config = iset_.find(name);
    if (config == nullptr) throw Error("stage3: '" + name + "' is not in the instruction set");
    instructions_text += "Configuration " + name + "\n";
    for (const dsl::DslRule& rule : config->general_rules)
      instructions_text += "  general: " + dsl::format_rule(rule) + "\n";
    for (const instructions::OptionInstruction& opt : config->option_instructions) {
      instructions_text += "  option " + opt.option_name + " [" +
                           instructions::to_tag(opt.kind) + ", " +
                           opt.data_type_name + "]:\n";
      if (opt.kind == instructions::OptionInstructionKind::kPerValue) {
        for (const auto& [value, rule] : opt.value_rules)
          instructions_text += "    " + value + ": " + dsl::format_rule(rule) + "\n";
      } else {
        instructions_text += "    " + dsl::format_rule(*opt.rule) + "\n";
      }
    }
    if (config->option_instructions.empty()) instructions_text += "  (no options)\n";
  }

  std::string prompt_text = gateway::render(
      prompts::prompt("stage3_configure_options"),
      {{"standard_dsl", standard_repr(dsl_standard)},
       {"option_instructions", instructions_text}});

  auto parse_response =
      [&](const std::string& text,
          std::string* error) -> std::optional<std::vector<Stage3Line>> {
    std::vector<Stage3Line> out;
    std::vector<std::string> lines = nonblank_lines(text);
    if (is_none(lines)) return out;
    for (const std::string& line : lines) {
      auto parsed = parse_stage3_line(line, error);
      if (!parsed) return std::nullopt;
      out.push_back(*parsed);
    }
    return out;
  };

  std::string response = ask(prompt_text);
  std::string error;
  auto lines = parse_response(response, &error);
  if (!lines) {
    response = ask_with_repair(prompt_text, response, error);
    lines = parse_response(response, &error);
    if (!lines) throw LlmFormatError("stage3 response unparseable: " + error);
  }

  auto candidate_for = [&](const std::string& name) -> CandidateConfiguration& {
    for (CandidateConfiguration& c : candidates)
      if (c.config_name == name) return c;
    candidates.push_back(CandidateConfiguration{name, {}, {}, -1});
    return candidates.back();
  };

  std::size_t rule_count = dsl_standard.rules.rules.size();
  auto checked_index = [&](int index) -> int {
    if (index == -1) return -1;
    if (rule_count == 0) return index;  // raw-text mode keeps the claim as-is
    if (index < 1 || static_cast<std::size_t>(index) > rule_count) {
      warn(warnings, "stage3: rule index " + std::to_string(index) + " out of range");
      return -1;
    }
    return index;
  };

  for (const Stage3Line& line : *lines) {
    // Containment: silently invented configurations and options never
    // become candidates.
    if (std::find(names.begin(), names.end(), line.config_name) == names.end()) {
      warn(warnings, "stage3: dropping line for unselected configuration '" +
                         line.config_name + "'");
      continue;
    }
    const instructions::ConfigInstruction* config = iset_.find(line.config_name);
    if (line.is_use) {
      CandidateConfiguration& candidate = candidate_for(line.config_name);
      if (candidate.matched_general_rules.empty())
        candidate.matched_general_rules = config->general_rules;
      if (candidate.standard_rule_index == -1)
        candidate.standard_rule_index = checked_index(line.rule_index);
      continue;
    }

    const instructions::OptionInstruction* opt = config->find_option(line.option_name);
    if (opt == nullptr) {
      warn(warnings, "stage3: dropping unknown option '" + line.config_name + "." +
                         line.option_name + "'");
      continue;
    }

    Assignment assignment;
    assignment.option_name = line.option_name;
    assignment.option_value = line.value;
    assignment.standard_rule_index = checked_index(line.rule_index);

    if (opt->kind == instructions::OptionInstructionKind::kPerValue) {
      const dsl::DslRule* rule = opt->rule_for_value(line.value);
      if (rule == nullptr) {
        warn(warnings, "stage3: value '" + line.value + "' out of range for '" +
                           line.config_name + "." + line.option_name + "'");
        continue;
      }
      assignment.matched_rule = *rule;
    } else {
      if (!value_matches_type(line.value, opt->data_type_name)) {
        warn(warnings, "stage3: value '" + line.value + "' does not fit type " +
                           opt->data_type_name + " for '" + line.config_name + "." +
                           line.option_name + "'");
        continue;
      }
      std::vector<std::string> values = opt->data_type_name == "set"
                                            ? strutil::split_csv(line.value)
                                            : std::vector<std::string>{line.value};
      if (values.empty()) {
        warn(warnings, "stage3: empty value for '" + line.config_name + "." +
                           line.option_name + "'");
        continue;
      }
      assignment.matched_rule =
          dsl::substitute_placeholder(*opt->rule, opt->option_name, values);
    }

    CandidateConfiguration& candidate = candidate_for(line.config_name);
    if (candidate.standard_rule_index == -1)
      candidate.standard_rule_index = assignment.standard_rule_index;
    candidate.assignments.push_back(std::move(assignment));
  }
  return candidates;
}

std::vector<AlignedConfiguration> Compiler::stage4_check_alignment(
    const DslCodingStandard& dsl_standard,
    const std::vector<CandidateConfiguration>& candidates,
    std::vector<std::string>* warnings) {
  std::vector<AlignedConfiguration> out;
  out.reserve(candidates.size());

  auto yes_no_via_model = [&](const std::string& template_name,
                              const std::map<std::string, std::string>& bindings,
                              AlignmentVerdicts& verdicts) -> std::optional<bool> {
    try {
      std::string prompt_text = gateway::render(prompts::prompt(template_name), bindings);
      std::string response = ask(prompt_text);
      auto verdict = parse_yes_no(response);
      if (!verdict) {
        response = ask_with_repair(prompt_text, response,
                                   "respond `yes: <reason>` or `no: <reason>`");
        verdict = parse_yes_no(response);
      }
      if (verdict) {
        verdicts.notes.push_back(template_name + ": " + trim(response));
        return verdict;
      }
      verdicts.notes.push_back(template_name + ": unparseable response, rejecting");
      return std::nullopt;
    } catch (const Error& e) {
      verdicts.notes.push_back(template_name + ": error (" + std::string(e.what()) +
                               "), rejecting");
      return std::nullopt;
    }
  };

  for (const CandidateConfiguration& candidate : candidates) {
    AlignedConfiguration aligned;
    aligned.candidate = candidate;
    AlignmentVerdicts& verdicts = aligned.verdicts;

    std::vector<const dsl::DslRule*> checked_rules;
    for (const Assignment& a : candidate.assignments)
      checked_rules.push_back(&a.matched_rule);
    if (checked_rules.empty())
      for (const dsl::DslRule& rule : candidate.matched_general_rules)
        checked_rules.push_back(&rule);

    const bool have_dsl = !dsl_standard.rules.rules.empty();
    const dsl::DslRule* standard_rule = nullptr;
    if (have_dsl && candidate.standard_rule_index >= 1 &&
        static_cast<std::size_t>(candidate.standard_rule_index) <=
            dsl_standard.rules.rules.size())
      standard_rule = &dsl_standard.rules.rules[candidate.standard_rule_index - 1];

    if (have_dsl && standard_rule == nullptr) {
      verdicts.rule_type = Verdict::kFail;
      verdicts.notes.push_back("no standard rule identified for this candidate");
      aligned.accepted = false;
      out.push_back(std::move(aligned));
      continue;
    }
    if (have_dsl && checked_rules.empty()) {
      verdicts.rule_type = Verdict::kFail;
      verdicts.notes.push_back("candidate carries no matched rules");
      aligned.accepted = false;
      out.push_back(std::move(aligned));
      continue;
    }

    if (have_dsl) {
      // Rule-type consistency, computed locally.
      bool types_match = std::all_of(
          checked_rules.begin(), checked_rules.end(),
          [&](const dsl::DslRule* r) { return r->rule_type == standard_rule->rule_type; });
      verdicts.rule_type = types_match ? Verdict::kPass : Verdict::kFail;
      if (!types_match)
        verdicts.notes.push_back("rule type differs from the standard rule");

      // Object consistency: exact case-folded overlap passes locally, the
      // model adjudicates anything fuzzier.
      if (verdicts.rule_type == Verdict::kPass) {
        std::set<std::string> standard_objects = object_term_set(*standard_rule);
        std::set<std::string> candidate_objects;
        std::vector<std::string> rule_texts;
        for (const dsl::DslRule* rule : checked_rules) {
          auto objects = object_term_set(*rule);
          candidate_objects.insert(objects.begin(), objects.end());
          rule_texts.push_back(dsl::format_rule(*rule));
        }
        if (standard_objects == candidate_objects) {
          verdicts.objects = Verdict::kPass;
        } else {
          auto verdict = yes_no_via_model(
              "stage4_objects",
              {{"standard_rule", dsl::format_rule(*standard_rule)},
               {"standard_objects", object_set_text(standard_objects)},
               {"candidate_rule", join(rule_texts, "; ")},
               {"candidate_objects", object_set_text(candidate_objects)}},
              verdicts);
          verdicts.objects = verdict.value_or(false) ? Verdict::kPass : Verdict::kFail;
        }
      }

      // Semantic alignment: identical rules pass by construction, everything
      // else goes to the model.
      if (verdicts.rule_type == Verdict::kPass && verdicts.objects == Verdict::kPass) {
        bool identical = std::any_of(
            checked_rules.begin(), checked_rules.end(),
            [&](const dsl::DslRule* r) { return dsl::structural_eq(*r, *standard_rule); });
        if (identical) {
          verdicts.semantics = Verdict::kPass;
        } else {
          std::vector<std::string> rule_texts;
          for (const dsl::DslRule* rule : checked_rules)
            rule_texts.push_back(dsl::format_rule(*rule));
          auto verdict = yes_no_via_model(
              "stage4_semantics",
              {{"standard_rule", dsl::format_rule(*standard_rule)},
               {"config_name", candidate.config_name},
               {"candidate_rules", join(rule_texts, "\n")}},
              verdicts);
          verdicts.semantics = verdict.value_or(false) ? Verdict::kPass : Verdict::kFail;
        }
      }
      aligned.accepted = verdicts.rule_type == Verdict::kPass &&
                         verdicts.objects == Verdict::kPass &&
                         verdicts.semantics == Verdict::kPass;
    } else {
      // Without a DSL standard the local checks have nothing to compare;
      // only the semantic check runs, against the raw text.
      std::vector<std::string> rule_texts;
      for (const dsl::DslRule* rule : checked_rules)
        rule_texts.push_back(dsl::format_rule(*rule));
      auto verdict = yes_no_via_model(
          "stage4_semantics",
          {{"standard_rule", dsl_standard.stage1_raw},
           {"config_name", candidate.config_name},
           {"candidate_rules", rule_texts.empty() ? "(name-only match)"
                                                  : join(rule_texts, "\n")}},
          verdicts);
      verdicts.semantics = verdict.value_or(false) ? Verdict::kPass : Verdict::kFail;
      aligned.accepted = verdicts.semantics == Verdict::kPass;
    }

    if (!aligned.accepted && warnings)
      warnings->push_back("stage4: rejected candidate '" + candidate.config_name + "'");
    out.push_back(std::move(aligned));
  }
  return out;
}

CompilationResult Compiler::compile(const corpus::CodingStandardDoc& doc,
                                    const std::vector<std::string>& targets,
                                    const CompileFlags& flags) {
  for (const std::string& tag : targets) {
    emitters::Target target = emitters::target_from_tag(tag);
    bool matches = (target == emitters::Target::kCheckstyleXml &&
                    iset_.linter.kind == corpus::LinterId::Kind::kCheckstyle) ||
                   (target == emitters::Target::kEslintJson &&
                    iset_.linter.kind == corpus::LinterId::Kind::kEslint);
    if (!matches)
      throw Error("target '" + tag + "' does not match the instruction set's linter '" +
                  iset_.linter.name + "'");
  }

  CompilationResult result;
  result.standard_id = doc.id;
  result.flags = flags;

  auto timed = [&](const char* stage, const std::function<void()>& body) {
    auto start = std::chrono::steady_clock::now();
    body();
    result.stage_timings_ms[stage] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  start)
            .count();
  };

  timed("stage1", [&] {
    if (flags.no_dsl) {
      result.dsl.standard_id = doc.id;
      result.dsl.stage1_raw = doc.title + "\n" + join(doc.sentences, "\n");
      result.dsl.empty_standard = false;
    } else {
      try {
        result.dsl = stage1_parse_standard(doc, &result.warnings);
      } catch (const LlmFormatError& e) {
        result.dsl.standard_id = doc.id;
        result.dsl.empty_standard = true;
        result.warnings.push_back(std::string("stage1: ") + e.what());
      }
    }
  });

  timed("stage2", [&] {
    if (flags.no_selector) {
      result.selected_names = iset_.order;
    } else if (!flags.no_dsl && result.dsl.rules.rules.empty()) {
      // Nothing to match against; an empty standard selects nothing.
    } else {
      try {
        result.selected_names = stage2_select_names(result.dsl, &result.warnings);
      } catch (const LlmFormatError& e) {
        result.warnings.push_back(std::string("stage2: ") + e.what());
      }
    }
  });

  timed("stage3", [&] {
    try {
      result.candidates =
          stage3_configure_options(result.dsl, result.selected_names, &result.warnings);
    } catch (const LlmFormatError& e) {
      result.warnings.push_back(std::string("stage3: ") + e.what());
    }
  });

  timed("stage4", [&] {
    if (flags.no_checker) {
      for (const CandidateConfiguration& candidate : result.candidates) {
        AlignedConfiguration aligned;
        aligned.candidate = candidate;
        aligned.verdicts.notes.push_back("alignment checker disabled");
        aligned.accepted = true;
        result.aligned.push_back(std::move(aligned));
      }
    } else {
      result.aligned =
          stage4_check_alignment(result.dsl, result.candidates, &result.warnings);
    }
  });

  timed("stage5", [&] {
    std::vector<AlignedConfiguration> accepted;
    for (const AlignedConfiguration& aligned : result.aligned)
      if (aligned.accepted) accepted.push_back(aligned);
    emitters::OptionTypeFn types = emitters::option_types_from(iset_);
    for (const std::string& tag : targets) {
      emitters::Target target = emitters::target_from_tag(tag);
      emitters::EmittedConfig emitted =
          flags.llm_render
              ? emitters::llm_render(gateway_, target, accepted, types, &result.warnings)
              : emitters::render(target, accepted, types);
      result.emitted[tag] = emitted.text;
    }
  });

  result.run_manifest = manifest::make_manifest(
      gateway_.config(), flags.to_strings(), instructions::instruction_set_hash(iset_));
  return result;
}

nlohmann::ordered_json result_to_json(const CompilationResult& result) {
  ordered_json rules = ordered_json::array();
  for (const dsl::DslRule& rule : result.dsl.rules.rules)
    rules.push_back(dsl::format_rule(rule));

  ordered_json candidates = ordered_json::array();
  for (const CandidateConfiguration& candidate : result.candidates)
    candidates.push_back(candidate_to_json(candidate));

  ordered_json aligned = ordered_json::array();
  for (const AlignedConfiguration& a : result.aligned) {
    aligned.push_back(ordered_json{
        {"config_name", a.candidate.config_name},
        {"accepted", a.accepted},
        {"verdicts", ordered_json{{"rule_type", to_tag(a.verdicts.rule_type)},
                                  {"objects", to_tag(a.verdicts.objects)},
                                  {"semantics", to_tag(a.verdicts.semantics)}}},
        {"notes", a.verdicts.notes},
        {"candidate", candidate_to_json(a.candidate)}});
  }

  ordered_json flags{{"no_dsl", result.flags.no_dsl},
                     {"no_selector", result.flags.no_selector},
                     {"no_checker", result.flags.no_checker},
                     {"llm_render", result.flags.llm_render}};

  return ordered_json{{"version", 1},
                      {"standard_id", result.standard_id},
                      {"manifest", result.run_manifest.to_json()},
                      {"flags", flags},
                      {"stage1", ordered_json{{"raw", result.dsl.stage1_raw},
                                              {"rules", rules},
                                              {"empty_standard", result.dsl.empty_standard}}},
                      {"stage2", ordered_json{{"selected", result.selected_names}}},
                      {"stage3", ordered_json{{"candidates", candidates}}},
                      {"stage4", ordered_json{{"aligned", aligned}}},
                      {"stage5", ordered_json{{"emitted", result.emitted}}},
                      {"warnings", result.warnings}};
}

void save_result(const std::string& path, const CompilationResult& result) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << result_to_json(result).dump(2) << '\n';
}

}  // namespace lintcc::pipeline
