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

#include "lintcc/instructions.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "lintcc/parallel.hpp"
#include "lintcc/prompts.hpp"

namespace lintcc::instructions {

namespace {

using nlohmann::ordered_json;

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> nonblank_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

bool is_none(const std::vector<std::string>& lines) {
  return lines.size() == 1 && (lines[0] == "none" || lines[0] == "None");
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

// `i: yes|no` lines covering exactly the indices 0..n-1.
std::optional<std::vector<bool>> parse_verdicts(const std::string& response,
                                                std::size_t n, std::string* error) {
  std::vector<bool> verdicts(n, false);
  std::vector<bool> seen(n, false);
  for (const std::string& line : nonblank_lines(response)) {
    std::size_t colon = line.find(':');
    if (colon == std::string::npos) {
      *error = "line without ':' separator: " + line;
      return std::nullopt;
    }
    std::string index_text = trim(line.substr(0, colon));
    std::string verdict = trim(line.substr(colon + 1));
    std::size_t index = 0;
    try {
      index = std::stoul(index_text);
    } catch (...) {
      *error = "bad sentence index: " + line;
      return std::nullopt;
    }
    if (index >= n || seen[index]) {
      *error = "index out of range or repeated: " + line;
      return std::nullopt;
    }
    if (verdict != "yes" && verdict != "no") {
      *error = "verdict must be yes or no: " + line;
      return std::nullopt;
    }
    seen[index] = true;
    verdicts[index] = verdict == "yes";
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) {
      *error = "missing verdict for sentence " + std::to_string(i);
      return std::nullopt;
    }
  }
  return verdicts;
}

std::string rules_to_text(const std::vector<dsl::DslRule>& rules) {
  std::vector<std::string> lines;
  lines.reserve(rules.size());
  for (const dsl::DslRule& rule : rules) lines.push_back(dsl::format_rule(rule));
  return join(lines, "\n");
}

ordered_json option_to_json(const OptionInstruction& opt) {
  ordered_json rules;
  if (opt.kind == OptionInstructionKind::kPerValue) {
    rules = ordered_json::object();
    for (const auto& [value, rule] : opt.value_rules)
      rules[value] = dsl::format_rule(rule);
  } else {
    rules = ordered_json{{"rule", dsl::format_rule(*opt.rule)}};
  }
  return ordered_json{{"option_name", opt.option_name},
                      {"kind", to_tag(opt.kind)},
                      {"data_type", opt.data_type_name},
                      {"rules", rules}};
}

ordered_json instructions_to_json(const InstructionSet& iset) {
  ordered_json arr = ordered_json::array();
  for (const std::string& name : iset.order) {
    const ConfigInstruction& config = iset.instructions.at(name);
    ordered_json general = ordered_json::array();
    for (const dsl::DslRule& rule : config.general_rules)
      general.push_back(dsl::format_rule(rule));
    ordered_json options = ordered_json::array();
    for (const OptionInstruction& opt : config.option_instructions)
      options.push_back(option_to_json(opt));
    arr.push_back(ordered_json{{"config_name", config.config_name},
                               {"general_rules", general},
                               {"options", options}});
  }
  return arr;
}

dsl::DslRule parse_single_rule(const std::string& text) {
  dsl::RuleSet rs = dsl::parse_rule_set(text);
  if (rs.rules.size() != 1)
    throw dsl::SyntaxError(0, "exactly one rule on the line");
  return rs.rules[0];
}

}  // namespace

std::string to_tag(OptionInstructionKind kind) {
  switch (kind) {
    case OptionInstructionKind::kPerValue: return "per_value";
    case OptionInstructionKind::kPlaceholder: return "placeholder";
    case OptionInstructionKind::kObjectSelector: return "object_selector";
  }
  return "placeholder";
}

OptionInstructionKind option_kind_from_tag(const std::string& tag) {
  if (tag == "per_value") return OptionInstructionKind::kPerValue;
  if (tag == "placeholder") return OptionInstructionKind::kPlaceholder;
  if (tag == "object_selector") return OptionInstructionKind::kObjectSelector;
  throw SchemaError("unknown option instruction kind '" + tag + "'", "kind");
}

const dsl::DslRule* OptionInstruction::rule_for_value(const std::string& literal) const {
  for (const auto& [value, rule] : value_rules)
    if (value == literal) return &rule;
  return nullptr;
}

const OptionInstruction* ConfigInstruction::find_option(const std::string& name) const {
  for (const OptionInstruction& opt : option_instructions)
    if (opt.option_name == name) return &opt;
  return nullptr;
}

bool InstructionSet::contains(const std::string& config_name) const {
  return instructions.find(config_name) != instructions.end();
}

const ConfigInstruction* InstructionSet::find(const std::string& config_name) const {
  auto it = instructions.find(config_name);
  return it == instructions.end() ? nullptr : &it->second;
}

std::string InstructionBuilder::ask(const std::string& prompt_text) {
  auto req = gateway::CompletionRequest::user_message(gateway_.config().model_id,
                                                      prompt_text);
  return gateway_.complete(req);
}

std::string InstructionBuilder::ask_with_repair(const std::string& prompt_text,
                                                const std::string& first_response,
                                                const std::string& error) {
  gateway::CompletionRequest req;
  req.model_id = gateway_.config().model_id;
  req.prompt_parts.emplace_back(gateway::Role::kUser, prompt_text);
  req.prompt_parts.emplace_back(gateway::Role::kAssistant, first_response);
  req.prompt_parts.emplace_back(gateway::Role::kUser, prompts::repair_message(error));
  return gateway_.complete(req);
}

std::vector<bool> InstructionBuilder::classify_rule_sentences(
    const corpus::LinterConfigDoc& doc) {
  if (doc.description_sentences.empty())
    throw Error("config '" + doc.config_name + "' has no description sentences");
  std::string numbered;
  for (std::size_t i = 0; i < doc.description_sentences.size(); ++i)
    numbered += std::to_string(i) + ": " + doc.description_sentences[i] + "\n";
  std::string prompt_text =
      gateway::render(prompts::prompt("classify_sentences"), {{"sentences", numbered}});

  std::string response = ask(prompt_text);
  std::string error;
  auto verdicts = parse_verdicts(response, doc.description_sentences.size(), &error);
  if (!verdicts) {
    response = ask_with_repair(prompt_text, response, error);
    verdicts = parse_verdicts(response, doc.description_sentences.size(), &error);
    if (!verdicts)
      throw LlmFormatError("classification for '" + doc.config_name +
                           "' unparseable: " + error);
  }
  return *verdicts;
}

std::vector<dsl::DslRule> InstructionBuilder::build_general_instruction(
    const corpus::LinterConfigDoc& doc, const std::vector<bool>& classification,
    BuildReport* report) {
  if (classification.size() != doc.description_sentences.size())
    throw Error("classification does not cover every sentence of '" +
                doc.config_name + "'");

  std::vector<dsl::DslRule> rules;
  for (std::size_t i = 0; i < doc.description_sentences.size(); ++i) {
    if (!classification[i]) continue;  // never fabricate rules for non-rule text
    std::string prompt_text = gateway::render(
        prompts::prompt("sentence_to_dsl"),
        {{"grammar", prompts::grammar_text()},
         {"sentence", doc.description_sentences[i]}});
    std::string response = ask(prompt_text);

    auto parse_lines = [&](const std::string& text,
                           std::vector<std::string>* bad) -> std::vector<dsl::DslRule> {
      std::vector<dsl::DslRule> out;
      std::vector<std::string> lines = nonblank_lines(text);
      if (is_none(lines)) return out;
      for (const std::string& line : lines) {
        try {
          dsl::RuleSet rs = dsl::parse_rule_set(line);
          out.insert(out.end(), rs.rules.begin(), rs.rules.end());
        } catch (const Error& e) {
          bad->push_back(line + "  <- " + e.what());
        }
      }
      return out;
    };

    std::vector<std::string> bad;
    std::vector<dsl::DslRule> parsed = parse_lines(response, &bad);
    if (!bad.empty()) {
      std::string repaired = ask_with_repair(
          prompt_text, response, "these lines are not valid DSL:\n" + join(bad, "\n"));
      bad.clear();
      parsed = parse_lines(repaired, &bad);
      for (const std::string& line : bad) {
        if (report)
          report->warnings.push_back("dropping unparseable rule line for '" +
                                     doc.config_name + "': " + line);
      }
    }
    rules.insert(rules.end(), parsed.begin(), parsed.end());
  }
  return rules;
}

OptionInstruction InstructionBuilder::build_option_instruction(
    const corpus::LinterConfigDoc& doc, const corpus::OptionDoc& opt,
    std::vector<dsl::DslRule> general_rules) {
  OptionInstruction out;
  out.option_name = opt.option_name;
  out.data_type_name = opt.data_type_name;

  // Options that select checked objects take priority; the shipped corpora
  // give them unbounded ranges.
  if (opt.specifies_checked_objects) {
    out.kind = OptionInstructionKind::kObjectSelector;
  } else if (opt.value_range.kind == corpus::OptionValueRange::Kind::kFinite) {
    out.kind = OptionInstructionKind::kPerValue;
  } else {
    out.kind = OptionInstructionKind::kPlaceholder;
  }

  if (out.kind == OptionInstructionKind::kPerValue) {
    std::string prompt_text = gateway::render(
        prompts::prompt("option_per_value"),
        {{"grammar", prompts::grammar_text()},
         {"config_name", doc.config_name},
         {"option_name", opt.option_name},
         {"option_description", opt.description},
         {"values", join(opt.value_range.literals, ", ")}});

    auto parse_values = [&](const std::string& text, std::string* error)
        -> std::optional<std::vector<std::pair<std::string, dsl::DslRule>>> {
      std::vector<std::pair<std::string, dsl::DslRule>> pairs;
      std::map<std::string, dsl::DslRule> by_value;
      for (const std::string& line : nonblank_lines(text)) {
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) {
          *error = "line without 'value:' prefix: " + line;
          return std::nullopt;
        }
        std::string value = trim(line.substr(0, colon));
        std::string rule_text = trim(line.substr(colon + 1));
        if (std::find(opt.value_range.literals.begin(), opt.value_range.literals.end(),
                      value) == opt.value_range.literals.end()) {
          *error = "'" + value + "' is not one of the option's values";
          return std::nullopt;
        }
        try {
          by_value.emplace(value, parse_single_rule(rule_text));
        } catch (const Error& e) {
          *error = "rule for '" + value + "' does not parse: " + e.what();
          return std::nullopt;
        }
      }
      for (const std::string& literal : opt.value_range.literals) {
        auto it = by_value.find(literal);
        if (it == by_value.end()) {
          *error = "missing rule for value '" + literal + "'";
          return std::nullopt;
        }
        pairs.emplace_back(literal, it->second);
      }
      return pairs;
    };

    std::string response = ask(prompt_text);
    std::string error;
    auto pairs = parse_values(response, &error);
    if (!pairs) {
      response = ask_with_repair(prompt_text, response, error);
      pairs = parse_values(response, &error);
      if (!pairs)
        throw LlmFormatError("option '" + doc.config_name + "." + opt.option_name +
                             "': " + error);
    }
    out.value_rules = std::move(*pairs);
    return out;
  }

  // Placeholder and object-selector instructions: exactly one rule whose only
  // placeholder is the option name.
  std::map<std::string, std::string> bindings{
      {"grammar", prompts::grammar_text()},
      {"config_name", doc.config_name},
      {"option_name", opt.option_name},
      {"option_description", opt.description}};
  std::string template_name = "option_placeholder";
  if (out.kind == OptionInstructionKind::kObjectSelector) {
    template_name = "option_object_selector";
    bindings["general_rules"] =
        general_rules.empty() ? "(none)" : rules_to_text(general_rules);
  }
  std::string prompt_text = gateway::render(prompts::prompt(template_name), bindings);

  auto parse_placeholder_rule =
      [&](const std::string& text, std::string* error) -> std::optional<dsl::DslRule> {
    std::vector<std::string> lines = nonblank_lines(text);
    if (lines.size() != 1) {
      *error = "expected exactly one DSL rule line";
      return std::nullopt;
    }
    dsl::DslRule rule;
    try {
      rule = parse_single_rule(lines[0]);
    } catch (const Error& e) {
      *error = e.what();
      return std::nullopt;
    }
    if (dsl::find_placeholders(rule) != std::vector<std::string>{opt.option_name}) {
      *error = "rule must contain exactly the placeholder {" + opt.option_name + "}";
      return std::nullopt;
    }
    return rule;
  };

  std::string response = ask(prompt_text);
  std::string error;
  auto rule = parse_placeholder_rule(response, &error);
  if (!rule) {
    response = ask_with_repair(prompt_text, response, error);
    rule = parse_placeholder_rule(response, &error);
    if (!rule)
      throw LlmFormatError("option '" + doc.config_name + "." + opt.option_name +
                           "': " + error);
  }
  out.rule = std::move(*rule);
  return out;
}

ConfigInstruction InstructionBuilder::build_config(const corpus::LinterConfigDoc& doc,
                                                   BuildReport* report) {
  ConfigInstruction config;
  config.config_name = doc.config_name;
  config.linter = doc.linter;
  std::vector<bool> classification = classify_rule_sentences(doc);
  config.general_rules = build_general_instruction(doc, classification, report);
  for (const corpus::OptionDoc& opt : doc.options)
    config.option_instructions.push_back(
        build_option_instruction(doc, opt, config.general_rules));
  return config;
}

InstructionSet InstructionBuilder::build_instruction_set(
    const std::vector<corpus::LinterConfigDoc>& docs, BuildReport* report) {
  if (docs.empty()) throw Error("cannot build an instruction set from zero docs");

  InstructionSet iset;
  iset.linter = docs.front().linter;

  std::vector<std::optional<ConfigInstruction>> built(docs.size());
  std::vector<BuildReport> partial(docs.size());
  std::vector<std::pair<std::string, std::string>> failures(docs.size());

  detail::parallel_for(docs.size(), gateway_.config().parallelism, [&](std::size_t i) {
    try {
      built[i] = build_config(docs[i], &partial[i]);
    } catch (const std::exception& e) {
      failures[i] = {docs[i].config_name, e.what()};
    }
  });

  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (report) {
      if (!failures[i].first.empty()) report->failures.push_back(failures[i]);
      report->warnings.insert(report->warnings.end(), partial[i].warnings.begin(),
                              partial[i].warnings.end());
    }
    if (!built[i]) continue;
    iset.order.push_back(docs[i].config_name);
    iset.instructions.emplace(docs[i].config_name, std::move(*built[i]));
  }
  iset.build_manifest = manifest::make_manifest(gateway_.config());
  return iset;
}

void save_instruction_set(const std::string& path, const InstructionSet& iset) {
  ordered_json doc{{"version", 1},
                   {"linter", iset.linter.name},
                   {"manifest", iset.build_manifest.to_json()},
                   {"instructions", instructions_to_json(iset)}};
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << doc.dump(2) << '\n';
}

InstructionSet load_instruction_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  ordered_json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON in ") + path + ": " + e.what(), "$");
  }

  InstructionSet iset;
  iset.linter = corpus::LinterId::from_tag(doc.at("linter").get<std::string>());
  if (doc.contains("manifest"))
    iset.build_manifest = manifest::RunManifest::from_json(doc["manifest"]);
  for (const auto& entry : doc.at("instructions")) {
    ConfigInstruction config;
    config.linter = iset.linter;
    config.config_name = entry.at("config_name").get<std::string>();
    for (const auto& rule_text : entry.at("general_rules"))
      config.general_rules.push_back(
          parse_single_rule(rule_text.get<std::string>()));
    for (const auto& opt_entry : entry.at("options")) {
      OptionInstruction opt;
      opt.option_name = opt_entry.at("option_name").get<std::string>();
      opt.kind = option_kind_from_tag(opt_entry.at("kind").get<std::string>());
      opt.data_type_name = opt_entry.value("data_type", "string");
      const auto& rules = opt_entry.at("rules");
      if (opt.kind == OptionInstructionKind::kPerValue) {
        for (const auto& [value, rule_text] : rules.items())
          opt.value_rules.emplace_back(value,
                                       parse_single_rule(rule_text.get<std::string>()));
      } else {
        opt.rule = parse_single_rule(rules.at("rule").get<std::string>());
      }
      config.option_instructions.push_back(std::move(opt));
    }
    if (iset.instructions.count(config.config_name) != 0)
      throw DuplicateIdError(config.config_name);
    iset.order.push_back(config.config_name);
    iset.instructions.emplace(config.config_name, std::move(config));
  }
  return iset;
}

std::string instruction_set_hash(const InstructionSet& iset) {
  ordered_json canonical{{"linter", iset.linter.name},
                         {"instructions", instructions_to_json(iset)}};
  return gateway::sha256_hex(canonical.dump());
}

}  // namespace lintcc::instructions
