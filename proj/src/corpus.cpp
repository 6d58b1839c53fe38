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

#include "lintcc/corpus.hpp"

#include <fstream>
#include <set>
#include <utility>

#include <json.hpp>

namespace lintcc::corpus {

namespace {

using nlohmann::ordered_json;

ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  ordered_json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON in ") + path + ": " + e.what(), "$");
  }
  return doc;
}

void write_json_file(const std::string& path, const ordered_json& doc) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << doc.dump(2) << '\n';
}

const ordered_json& require(const ordered_json& obj, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end()) throw SchemaError("missing field", field);
  return *it;
}

std::string require_string(const ordered_json& obj, const char* field) {
  const auto& v = require(obj, field);
  if (!v.is_string()) throw SchemaError("expected string", field);
  return v.get<std::string>();
}

std::vector<std::string> require_string_array(const ordered_json& obj,
                                              const char* field) {
  const auto& v = require(obj, field);
  if (!v.is_array()) throw SchemaError("expected array", field);
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) throw SchemaError("expected string element", field);
    out.push_back(item.get<std::string>());
  }
  return out;
}

void check_version(const ordered_json& doc) {
  if (require(doc, "version").get<int>() != 1)
    throw SchemaError("unsupported version", "version");
}

OptionDoc parse_option(const ordered_json& obj) {
  OptionDoc opt;
  opt.option_name = require_string(obj, "option_name");
  opt.data_type_name = require_string(obj, "data_type");
  opt.data_type = data_type_from_tag(opt.data_type_name);
  opt.description = require_string(obj, "description");
  const auto& spec = require(obj, "specifies_checked_objects");
  if (!spec.is_boolean())
    throw SchemaError("expected boolean", "specifies_checked_objects");
  opt.specifies_checked_objects = spec.get<bool>();

  const auto& range = require(obj, "value_range");
  std::string kind = require_string(range, "kind");
  if (kind == "finite") {
    opt.value_range.kind = OptionValueRange::Kind::kFinite;
    opt.value_range.literals = require_string_array(range, "literals");
    if (opt.value_range.literals.empty())
      throw SchemaError("finite range needs literals", "value_range.literals");
  } else if (kind == "unbounded") {
    opt.value_range.kind = OptionValueRange::Kind::kUnbounded;
  } else {
    throw SchemaError("unknown range kind '" + kind + "'", "value_range.kind");
  }

  // Booleans are exactly {true,false}; enums need at least two literals.
  if (opt.data_type == OptionDataType::kBoolean) {
    if (opt.value_range.kind != OptionValueRange::Kind::kFinite ||
        opt.value_range.literals.size() != 2)
      throw SchemaError("boolean option must have exactly two literals",
                        "value_range.literals");
  }
  if (opt.data_type == OptionDataType::kEnum) {
    if (opt.value_range.kind != OptionValueRange::Kind::kFinite ||
        opt.value_range.literals.size() < 2)
      throw SchemaError("enum option needs a finite range of >= 2 literals",
                        "value_range.literals");
  }
  return opt;
}

ordered_json option_to_json(const OptionDoc& opt) {
  ordered_json range;
  if (opt.value_range.kind == OptionValueRange::Kind::kFinite) {
    range = {{"kind", "finite"}, {"literals", opt.value_range.literals}};
  } else {
    range = {{"kind", "unbounded"}};
  }
  return ordered_json{{"option_name", opt.option_name},
                      {"data_type", opt.data_type_name},
                      {"value_range", range},
                      {"description", opt.description},
                      {"specifies_checked_objects", opt.specifies_checked_objects}};
}

}  // namespace

Language Language::from_tag(const std::string& tag) {
  Language lang;
  lang.name = tag;
  if (tag == "java") lang.kind = Kind::kJava;
  else if (tag == "javascript") lang.kind = Kind::kJavaScript;
  else lang.kind = Kind::kOther;
  return lang;
}

LinterId LinterId::from_tag(const std::string& tag) {
  LinterId id;
  id.name = tag;
  if (tag == "checkstyle") id.kind = Kind::kCheckstyle;
  else if (tag == "eslint") id.kind = Kind::kEslint;
  else id.kind = Kind::kOther;
  return id;
}

OptionDataType data_type_from_tag(const std::string& tag) {
  if (tag == "boolean") return OptionDataType::kBoolean;
  if (tag == "integer") return OptionDataType::kInteger;
  if (tag == "string") return OptionDataType::kString;
  if (tag == "enum") return OptionDataType::kEnum;
  if (tag == "set") return OptionDataType::kSet;
  if (tag == "regex") return OptionDataType::kRegex;
  return OptionDataType::kOther;
}

std::string to_tag(OptionDataType type) {
  switch (type) {
    case OptionDataType::kBoolean: return "boolean";
    case OptionDataType::kInteger: return "integer";
    case OptionDataType::kString: return "string";
    case OptionDataType::kEnum: return "enum";
    case OptionDataType::kSet: return "set";
    case OptionDataType::kRegex: return "regex";
    case OptionDataType::kOther: return "other";
  }
  return "other";
}

const OptionDoc* LinterConfigDoc::find_option(const std::string& name) const {
  for (const OptionDoc& opt : options)
    if (opt.option_name == name) return &opt;
  return nullptr;
}

std::vector<CodingStandardDoc> load_coding_standards(const std::string& path) {
  ordered_json doc = read_json_file(path);
  check_version(doc);
  const auto& standards = require(doc, "standards");
  if (!standards.is_array()) throw SchemaError("expected array", "standards");

  std::vector<CodingStandardDoc> out;
  std::set<std::string> seen;
  for (const auto& entry : standards) {
    CodingStandardDoc std_doc;
    std_doc.id = require_string(entry, "id");
    std_doc.title = require_string(entry, "title");
    std_doc.language = Language::from_tag(require_string(entry, "language"));
    std_doc.sentences = require_string_array(entry, "sentences");
    if (std_doc.sentences.empty())
      throw SchemaError("standard '" + std_doc.id + "' has no sentences",
                        "sentences");
    if (auto it = entry.find("source_url"); it != entry.end() && !it->is_null())
      std_doc.source_url = it->get<std::string>();
    if (!seen.insert(std_doc.id).second) throw DuplicateIdError(std_doc.id);
    out.push_back(std::move(std_doc));
  }
  return out;
}

std::vector<LinterConfigDoc> load_linter_docs(const std::string& path) {
  ordered_json doc = read_json_file(path);
  check_version(doc);
  LinterId linter = LinterId::from_tag(require_string(doc, "linter"));
  const auto& configs = require(doc, "configs");
  if (!configs.is_array()) throw SchemaError("expected array", "configs");

  std::vector<LinterConfigDoc> out;
  std::set<std::string> seen;
  for (const auto& entry : configs) {
    LinterConfigDoc cfg;
    cfg.linter = linter;
    cfg.config_name = require_string(entry, "config_name");
    cfg.description_sentences = require_string_array(entry, "description_sentences");
    const auto& options = require(entry, "options");
    if (!options.is_array()) throw SchemaError("expected array", "options");
    for (const auto& opt : options) cfg.options.push_back(parse_option(opt));
    if (!seen.insert(cfg.config_name).second) throw DuplicateIdError(cfg.config_name);
    out.push_back(std::move(cfg));
  }
  return out;
}

void save_coding_standards(const std::string& path,
                           const std::vector<CodingStandardDoc>& docs) {
  ordered_json arr = ordered_json::array();
  for (const CodingStandardDoc& doc : docs) {
    ordered_json entry{{"id", doc.id},
                       {"title", doc.title},
                       {"language", doc.language.name},
                       {"sentences", doc.sentences}};
    if (doc.source_url) entry["source_url"] = *doc.source_url;
    arr.push_back(std::move(entry));
  }
  write_json_file(path, ordered_json{{"version", 1}, {"standards", arr}});
}

void save_linter_docs(const std::string& path,
                      const std::vector<LinterConfigDoc>& docs) {
  ordered_json arr = ordered_json::array();
  std::string linter = docs.empty() ? "checkstyle" : docs.front().linter.name;
  for (const LinterConfigDoc& cfg : docs) {
    ordered_json options = ordered_json::array();
    for (const OptionDoc& opt : cfg.options) options.push_back(option_to_json(opt));
    arr.push_back(ordered_json{{"config_name", cfg.config_name},
                               {"description_sentences", cfg.description_sentences},
                               {"options", options}});
  }
  write_json_file(path, ordered_json{{"version", 1}, {"linter", linter}, {"configs", arr}});
}

std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  bool in_code_span = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    current.push_back(c);
    if (c == '`') in_code_span = !in_code_span;
    if (in_code_span) continue;
    if (c != '.' && c != '!' && c != '?') continue;
    bool at_boundary = i + 1 == text.size() || text[i + 1] == ' ' ||
                       text[i + 1] == '\n' || text[i + 1] == '\t' ||
                       text[i + 1] == '\r';
    if (!at_boundary) continue;
    // Trim and keep non-blank sentences.
    std::size_t b = current.find_first_not_of(" \t\r\n");
    std::size_t e = current.find_last_not_of(" \t\r\n");
    if (b != std::string::npos) out.push_back(current.substr(b, e - b + 1));
    current.clear();
  }
  std::size_t b = current.find_first_not_of(" \t\r\n");
  if (b != std::string::npos) {
    std::size_t e = current.find_last_not_of(" \t\r\n");
    out.push_back(current.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace lintcc::corpus
