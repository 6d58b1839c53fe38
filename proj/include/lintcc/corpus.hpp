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

#ifndef LINTCC_CORPUS_HPP_
#define LINTCC_CORPUS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "lintcc/errors.hpp"

// Normalized records for coding-standard documents and linter documentation.
// Corpora are pre-scraped JSON checked into the repo; everything here is
// read-only after load.

namespace lintcc::corpus {

struct Language {
  enum class Kind { kJava, kJavaScript, kOther };
  Kind kind = Kind::kOther;
  std::string name;  // canonical tag, e.g. "java", "javascript", "python"

  static Language from_tag(const std::string& tag);
  bool operator==(const Language&) const = default;
};

struct LinterId {
  enum class Kind { kCheckstyle, kEslint, kOther };
  Kind kind = Kind::kOther;
  std::string name;  // "checkstyle", "eslint", ...

  static LinterId from_tag(const std::string& tag);
  bool operator==(const LinterId&) const = default;
};

struct CodingStandardDoc {
  std::string id;
  std::string title;
  Language language;
  std::vector<std::string> sentences;  // nonempty
  std::optional<std::string> source_url;

  bool operator==(const CodingStandardDoc&) const = default;
};

enum class OptionDataType {
  kBoolean,
  kInteger,
  kString,
  kEnum,
  kSet,
  kRegex,
  kOther,
};

OptionDataType data_type_from_tag(const std::string& tag);
std::string to_tag(OptionDataType type);

struct OptionValueRange {
  enum class Kind { kFinite, kUnbounded };
  Kind kind = Kind::kUnbounded;
  std::vector<std::string> literals;  // meaningful only when finite

  bool operator==(const OptionValueRange&) const = default;
};

struct OptionDoc {
  std::string option_name;
  OptionDataType data_type = OptionDataType::kString;
  std::string data_type_name;  // raw tag, kept for "other" types
  OptionValueRange value_range;
  std::string description;
  bool specifies_checked_objects = false;

  bool operator==(const OptionDoc&) const = default;
};

struct LinterConfigDoc {
  std::string config_name;
  std::vector<std::string> description_sentences;
  std::vector<OptionDoc> options;
  LinterId linter;

  const OptionDoc* find_option(const std::string& name) const;
  bool operator==(const LinterConfigDoc&) const = default;
};

// Loads a corpus file (schema documented in the README). Throws IoError,
// SchemaError naming the offending field, or DuplicateIdError.
std::vector<CodingStandardDoc> load_coding_standards(const std::string& path);
std::vector<LinterConfigDoc> load_linter_docs(const std::string& path);

void save_coding_standards(const std::string& path,
                           const std::vector<CodingStandardDoc>& docs);
void save_linter_docs(const std::string& path,
                      const std::vector<LinterConfigDoc>& docs);

// Splits raw text into sentences on `.` `!` `?` followed by whitespace or
// end of input. Never splits inside backtick-quoted code spans; blank pieces
// are dropped. Text without a terminator comes back as a single sentence.
std::vector<std::string> split_sentences(const std::string& text);

}  // namespace lintcc::corpus

#endif  // LINTCC_CORPUS_HPP_
