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

#include "lintcc/emitters.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <set>

#include <json.hpp>

#include "lintcc/prompts.hpp"
#include "strutil.hpp"

namespace lintcc::emitters {

namespace {

using nlohmann::ordered_json;
using pipeline::AlignedConfiguration;

// Modules Checkstyle runs directly under Checker; everything else nests
// under TreeWalker.
constexpr std::array kCheckerDirectModules = {
    "BeforeExecutionExclusionFileFilter",
    "FileLength",
    "FileTabCharacter",
    "Header",
    "JavadocPackage",
    "LineLength",
    "NewlineAtEndOfFile",
    "OrderedProperties",
    "RegexpHeader",
    "RegexpMultiline",
    "RegexpOnFilename",
    "RegexpSingleline",
    "SeverityMatchFilter",
    "SuppressWarningsFilter",
    "SuppressWithPlainTextCommentFilter",
    "SuppressionFilter",
    "SuppressionSingleFilter",
    "Translation",
    "UniqueProperties",
};

bool is_checker_direct(const std::string& module_name) {
  return std::find(kCheckerDirectModules.begin(), kCheckerDirectModules.end(),
                   module_name) != kCheckerDirectModules.end();
}

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void require_accepted(const std::vector<AlignedConfiguration>& configs) {
  for (const AlignedConfiguration& config : configs)
    if (!config.accepted)
      throw UnacceptedCandidateError(config.candidate.config_name);
}

void append_module(std::string& out, const AlignedConfiguration& config,
                   const std::string& indent) {
  const auto& candidate = config.candidate;
  if (candidate.assignments.empty()) {
    out += indent + "<module name=\"" + xml_escape(candidate.config_name) + "\"/>\n";
    return;
  }
  out += indent + "<module name=\"" + xml_escape(candidate.config_name) + "\">\n";
  for (const pipeline::Assignment& a : candidate.assignments) {
    out += indent + "  <property name=\"" + xml_escape(a.option_name) +
           "\" value=\"" + xml_escape(a.option_value) + "\"/>\n";
  }
  out += indent + "</module>\n";
}

ordered_json coerce_value(const std::string& config, const pipeline::Assignment& a,
                          const OptionTypeFn& option_type) {
  std::string type = option_type ? option_type(config, a.option_name) : "string";
  if (type == "boolean") {
    if (a.option_value == "true") return true;
    if (a.option_value == "false") return false;
    throw TypeCoercionError(a.option_name, a.option_value, "boolean");
  }
  if (type == "integer") {
    char* end = nullptr;
    long long n = std::strtoll(a.option_value.c_str(), &end, 10);
    if (end == a.option_value.c_str() || *end != '\0')
      throw TypeCoercionError(a.option_name, a.option_value, "integer");
    return n;
  }
  if (type == "set") {
    ordered_json arr = ordered_json::array();
    for (const std::string& item : strutil::split_csv(a.option_value))
      arr.push_back(item);
    return arr;
  }
  return a.option_value;  // string, enum, regex, other
}

std::string configs_as_text(const std::vector<AlignedConfiguration>& configs) {
  std::string out;
  for (const AlignedConfiguration& config : configs) {
    out += config.candidate.config_name;
    if (!config.candidate.assignments.empty()) {
      out += ":";
      for (std::size_t i = 0; i < config.candidate.assignments.size(); ++i) {
        const auto& a = config.candidate.assignments[i];
        out += (i == 0 ? " " : ", ") + a.option_name + "=" + a.option_value;
      }
    }
    out += "\n";
  }
  if (out.empty()) out = "(none)\n";
  return out;
}

constexpr const char* kCheckstyleFormatExample =
    R"(<?xml version="1.0" encoding="UTF-8"?>
<!DOCTYPE module PUBLIC "-//Checkstyle//DTD Checkstyle Configuration 1.3//EN" "https://checkstyle.org/dtds/configuration_1_3.dtd">
<module name="Checker">
  <module name="TreeWalker">
    <module name="PackageDeclaration"/>
  </module>
</module>)";

constexpr const char* kEslintFormatExample = R"({
  "rules": {
    "curly": ["error"]
  }
})";

// -- Minimal XML reader ------------------------------------------------------

class XmlReader {
 public:
  explicit XmlReader(const std::string& text) : text_(text) {}

  XmlNode parse() {
    skip_misc();
    XmlNode root = parse_element();
    skip_misc();
    if (pos_ != text_.size()) throw Error("trailing content after root element");
    return root;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  // Whitespace, XML prolog, doctype and comments.
  void skip_misc() {
    while (true) {
      skip_ws();
      if (text_.compare(pos_, 2, "<?") == 0) {
        std::size_t end = text_.find("?>", pos_);
        if (end == std::string::npos) throw Error("unterminated prolog");
        pos_ = end + 2;
      } else if (text_.compare(pos_, 4, "<!--") == 0) {
        std::size_t end = text_.find("-->", pos_);
        if (end == std::string::npos) throw Error("unterminated comment");
        pos_ = end + 3;
      } else if (text_.compare(pos_, 2, "<!") == 0) {
        std::size_t end = text_.find('>', pos_);
        if (end == std::string::npos) throw Error("unterminated doctype");
        pos_ = end + 1;
      } else {
        return;
      }
    }
  }

  std::string parse_name() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '-' || text_[pos_] == '_' || text_[pos_] == '.' ||
            text_[pos_] == ':'))
      ++pos_;
    if (start == pos_) throw Error("expected name at byte " + std::to_string(pos_));
    return text_.substr(start, pos_ - start);
  }

  std::string unescape(const std::string& value) {
    std::string out;
    for (std::size_t i = 0; i < value.size();) {
      if (value[i] != '&') {
        out.push_back(value[i++]);
        continue;
      }
      std::size_t semi = value.find(';', i);
      if (semi == std::string::npos) throw Error("bad entity in attribute value");
      std::string entity = value.substr(i + 1, semi - i - 1);
      if (entity == "amp") out.push_back('&');
      else if (entity == "lt") out.push_back('<');
      else if (entity == "gt") out.push_back('>');
      else if (entity == "quot") out.push_back('"');
      else if (entity == "apos") out.push_back('\'');
      else if (!entity.empty() && entity[0] == '#')
        out.push_back(static_cast<char>(std::stoi(entity.substr(1))));
      else throw Error("unknown entity &" + entity + ";");
      i = semi + 1;
    }
    return out;
  }

  XmlNode parse_element() {
    if (pos_ >= text_.size() || text_[pos_] != '<')
      throw Error("expected '<' at byte " + std::to_string(pos_));
    ++pos_;
    XmlNode node;
    node.name = parse_name();
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) throw Error("unterminated element " + node.name);
      if (text_[pos_] == '/') {
        if (text_.compare(pos_, 2, "/>") != 0) throw Error("malformed tag end");
        pos_ += 2;
        return node;  // self-closing
      }
      if (text_[pos_] == '>') {
        ++pos_;
        break;
      }
      std::string key = parse_name();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '=')
        throw Error("expected '=' after attribute " + key);
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || (text_[pos_] != '"' && text_[pos_] != '\''))
        throw Error("expected quoted value for attribute " + key);
      char quote = text_[pos_++];
      std::size_t end = text_.find(quote, pos_);
      if (end == std::string::npos) throw Error("unterminated attribute value");
      node.attributes.emplace_back(key, unescape(text_.substr(pos_, end - pos_)));
      pos_ = end + 1;
    }
    // Children until the matching close tag; bare text is not allowed in
    // this dialect.
    while (true) {
      skip_misc();
      if (pos_ >= text_.size()) throw Error("missing close tag for " + node.name);
      if (text_.compare(pos_, 2, "</") == 0) {
        pos_ += 2;
        std::string close = parse_name();
        if (close != node.name)
          throw Error("mismatched close tag: " + close + " vs " + node.name);
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != '>')
          throw Error("malformed close tag for " + node.name);
        ++pos_;
        return node;
      }
      if (text_[pos_] != '<')
        throw Error("unexpected text content in element " + node.name);
      node.children.push_back(parse_element());
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

void validate_checkstyle_node(const XmlNode& node, std::vector<std::string>* diags) {
  if (node.name != "module" && node.name != "property") {
    diags->push_back("unexpected element <" + node.name + ">");
    return;
  }
  if (node.attribute("name") == nullptr)
    diags->push_back("<" + node.name + "> without a name attribute");
  if (node.name == "property") {
    if (node.attribute("value") == nullptr)
      diags->push_back("<property> without a value attribute");
    if (!node.children.empty()) diags->push_back("<property> must be empty");
  }
  for (const XmlNode& child : node.children) validate_checkstyle_node(child, diags);
}

}  // namespace

std::string to_tag(Target target) {
  return target == Target::kCheckstyleXml ? "checkstyle" : "eslint";
}

Target target_from_tag(const std::string& tag) {
  if (tag == "checkstyle") return Target::kCheckstyleXml;
  if (tag == "eslint") return Target::kEslintJson;
  throw Error("unknown emit target '" + tag + "' (expected checkstyle or eslint)");
}

OptionTypeFn option_types_from(const instructions::InstructionSet& iset) {
  return [&iset](const std::string& config, const std::string& option) -> std::string {
    const instructions::ConfigInstruction* entry = iset.find(config);
    if (entry == nullptr) return "string";
    const instructions::OptionInstruction* opt = entry->find_option(option);
    return opt == nullptr ? "string" : opt->data_type_name;
  };
}

const std::string* XmlNode::attribute(const std::string& key) const {
  for (const auto& [k, v] : attributes)
    if (k == key) return &v;
  return nullptr;
}

XmlNode parse_xml(const std::string& text) { return XmlReader(text).parse(); }

EmittedConfig render_checkstyle(const std::vector<AlignedConfiguration>& configs) {
  require_accepted(configs);
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<!DOCTYPE module PUBLIC \"-//Checkstyle//DTD Checkstyle Configuration 1.3//EN\" "
      "\"https://checkstyle.org/dtds/configuration_1_3.dtd\">\n";
  out += "<module name=\"Checker\">\n";
  for (const AlignedConfiguration& config : configs)
    if (is_checker_direct(config.candidate.config_name))
      append_module(out, config, "  ");
  bool any_tree = std::any_of(configs.begin(), configs.end(), [](const auto& c) {
    return !is_checker_direct(c.candidate.config_name);
  });
  if (any_tree) {
    out += "  <module name=\"TreeWalker\">\n";
    for (const AlignedConfiguration& config : configs)
      if (!is_checker_direct(config.candidate.config_name))
        append_module(out, config, "    ");
    out += "  </module>\n";
  }
  out += "</module>\n";

  EmittedConfig emitted{Target::kCheckstyleXml, out, false};
  emitted.validated = validate_emitted(emitted).ok;
  return emitted;
}

EmittedConfig render_eslint(const std::vector<AlignedConfiguration>& configs,
                            const OptionTypeFn& option_type) {
  require_accepted(configs);
  ordered_json rules = ordered_json::object();
  for (const AlignedConfiguration& config : configs) {
    const auto& candidate = config.candidate;
    ordered_json value = ordered_json::array();
    value.push_back("error");
    if (!candidate.assignments.empty()) {
      ordered_json options = ordered_json::object();
      for (const pipeline::Assignment& a : candidate.assignments)
        options[a.option_name] = coerce_value(candidate.config_name, a, option_type);
      value.push_back(options);
    }
    rules[candidate.config_name] = value;
  }
  EmittedConfig emitted{Target::kEslintJson,
                        ordered_json{{"rules", rules}}.dump(2) + "\n", false};
  emitted.validated = validate_emitted(emitted).ok;
  return emitted;
}

EmittedConfig render(Target target, const std::vector<AlignedConfiguration>& configs,
                     const OptionTypeFn& option_type) {
  return target == Target::kCheckstyleXml ? render_checkstyle(configs)
                                          : render_eslint(configs, option_type);
}

ValidationResult validate_emitted(const EmittedConfig& config) {
  ValidationResult result;
  if (config.target == Target::kCheckstyleXml) {
    XmlNode root;
    try {
      root = parse_xml(config.text);
    } catch (const std::exception& e) {
      result.diagnostics.push_back(e.what());
      return result;
    }
    if (root.name != "module" || root.attribute("name") == nullptr ||
        *root.attribute("name") != "Checker")
      result.diagnostics.push_back("root element must be <module name=\"Checker\">");
    validate_checkstyle_node(root, &result.diagnostics);
    result.ok = result.diagnostics.empty();
    return result;
  }

  ordered_json doc = ordered_json::parse(config.text, nullptr, false);
  if (doc.is_discarded()) {
    result.diagnostics.push_back("not valid JSON");
    return result;
  }
  if (!doc.is_object() || !doc.contains("rules") || !doc["rules"].is_object()) {
    result.diagnostics.push_back("top level must be an object with a rules object");
    return result;
  }
  static const std::set<std::string> kSeverities = {"off", "warn", "error"};
  for (const auto& [name, value] : doc["rules"].items()) {
    bool ok = false;
    if (value.is_string()) ok = kSeverities.count(value.get<std::string>()) != 0;
    if (value.is_number_integer())
      ok = value.get<int>() >= 0 && value.get<int>() <= 2;
    if (value.is_array() && !value.empty()) {
      const auto& severity = value[0];
      ok = (severity.is_string() && kSeverities.count(severity.get<std::string>())) ||
           (severity.is_number_integer() && severity.get<int>() >= 0 &&
            severity.get<int>() <= 2);
    }
    if (!ok)
      result.diagnostics.push_back("rule '" + name +
                                   "' must map to a severity or [severity, options...]");
  }
  result.ok = result.diagnostics.empty();
  return result;
}

EmittedConfig llm_render(gateway::LlmGateway& gw, Target target,
                         const std::vector<AlignedConfiguration>& configs,
                         const OptionTypeFn& option_type,
                         std::vector<std::string>* warnings) {
  require_accepted(configs);
  std::string prompt_text = gateway::render(
      prompts::prompt("stage5_render"),
      {{"target", target == Target::kCheckstyleXml ? "Checkstyle XML" : "ESLint JSON"},
       {"format_example", target == Target::kCheckstyleXml ? kCheckstyleFormatExample
                                                           : kEslintFormatExample},
       {"configurations", configs_as_text(configs)}});

  auto attempt = [&](const std::string& text) -> std::optional<EmittedConfig> {
    EmittedConfig emitted{target, strutil::trim(text) + "\n", false};
    ValidationResult check = validate_emitted(emitted);
    if (!check.ok) return std::nullopt;
    emitted.validated = true;
    return emitted;
  };

  auto req = gateway::CompletionRequest::user_message(gw.config().model_id, prompt_text);
  std::string response = gw.complete(req);
  if (auto emitted = attempt(response)) return *emitted;

  ValidationResult why = validate_emitted({target, strutil::trim(response) + "\n", false});
  gateway::CompletionRequest repair;
  repair.model_id = gw.config().model_id;
  repair.prompt_parts.emplace_back(gateway::Role::kUser, prompt_text);
  repair.prompt_parts.emplace_back(gateway::Role::kAssistant, response);
  repair.prompt_parts.emplace_back(
      gateway::Role::kUser,
      prompts::repair_message("the output failed validation: " +
                              strutil::join(why.diagnostics, "; ")));
  response = gw.complete(repair);
  if (auto emitted = attempt(response)) return *emitted;

  if (warnings)
    warnings->push_back("model-rendered " + to_tag(target) +
                        " output failed validation twice; using the deterministic renderer");
  return render(target, configs, option_type);
}

}  // namespace lintcc::emitters
