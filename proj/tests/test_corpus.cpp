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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "lintcc/corpus.hpp"

using namespace lintcc;
using namespace lintcc::corpus;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << body;
  return path;
}

constexpr const char* kGoodDocs = R"({
  "version": 1,
  "linter": "checkstyle",
  "configs": [
    {
      "config_name": "NeedBraces",
      "description_sentences": ["Checks for braces around code blocks."],
      "options": [
        {
          "option_name": "allowSingleLineStatement",
          "data_type": "boolean",
          "value_range": {"kind": "finite", "literals": ["true", "false"]},
          "description": "Allow single-line statements without braces.",
          "specifies_checked_objects": false
        },
        {
          "option_name": "tokens",
          "data_type": "set",
          "value_range": {"kind": "unbounded"},
          "description": "Tokens to check.",
          "specifies_checked_objects": true
        }
      ]
    }
  ]
})";

}  // namespace

TEST_CASE("load_coding_standards: well-formed corpus") {
  auto path = write_temp("corpus_ok.json", R"({
    "version": 1,
    "standards": [
      {"id": "s1", "title": "Braces", "language": "java",
       "sentences": ["Braces are used with if statements."],
       "source_url": "https://example.test/guide#braces"},
      {"id": "s2", "title": "Imports", "language": "java",
       "sentences": ["Wildcard imports are not used."]}
    ]
  })");
  auto docs = load_coding_standards(path.string());
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].id == "s1");
  CHECK(docs[0].language.kind == Language::Kind::kJava);
  CHECK(docs[0].source_url.has_value());
  CHECK_FALSE(docs[1].source_url.has_value());
}

TEST_CASE("load_coding_standards: duplicate ids rejected") {
  auto path = write_temp("corpus_dup.json", R"({
    "version": 1,
    "standards": [
      {"id": "s1", "title": "A", "language": "java", "sentences": ["x."]},
      {"id": "s1", "title": "B", "language": "java", "sentences": ["y."]}
    ]
  })");
  CHECK_THROWS_AS(load_coding_standards(path.string()), DuplicateIdError);
}

TEST_CASE("load_coding_standards: errors name the offending field") {
  CHECK_THROWS_AS(load_coding_standards("/nonexistent/corpus.json"), IoError);

  auto path = write_temp("corpus_bad.json", R"({
    "version": 1,
    "standards": [{"id": "s1", "title": "A", "language": "java", "sentences": []}]
  })");
  try {
    load_coding_standards(path.string());
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.field() == "sentences");
  }
}

TEST_CASE("load_linter_docs: well-formed docs") {
  auto path = write_temp("docs_ok.json", kGoodDocs);
  auto docs = load_linter_docs(path.string());
  REQUIRE(docs.size() == 1);
  CHECK(docs[0].linter.kind == LinterId::Kind::kCheckstyle);
  REQUIRE(docs[0].options.size() == 2);
  CHECK(docs[0].options[0].data_type == OptionDataType::kBoolean);
  CHECK(docs[0].options[1].specifies_checked_objects);
  CHECK(docs[0].find_option("tokens") != nullptr);
  CHECK(docs[0].find_option("nope") == nullptr);
}

TEST_CASE("load_linter_docs: boolean option with three literals is rejected") {
  std::string body = kGoodDocs;
  auto pos = body.find(R"(["true", "false"])");
  body.replace(pos, std::string(R"(["true", "false"])").size(),
               R"(["true", "false", "maybe"])");
  auto path = write_temp("docs_bad_bool.json", body);
  CHECK_THROWS_AS(load_linter_docs(path.string()), SchemaError);
}

TEST_CASE("load/save identity") {
  auto path = write_temp("docs_roundtrip.json", kGoodDocs);
  auto docs = load_linter_docs(path.string());
  auto path2 = std::filesystem::temp_directory_path() / "docs_roundtrip2.json";
  save_linter_docs(path2.string(), docs);
  CHECK(load_linter_docs(path2.string()) == docs);

  auto corpus_path = write_temp("corpus_roundtrip.json", R"({
    "version": 1,
    "standards": [{"id": "s1", "title": "A", "language": "javascript",
                   "sentences": ["Use `const`.", "Avoid var."]}]
  })");
  auto standards = load_coding_standards(corpus_path.string());
  auto corpus_path2 = std::filesystem::temp_directory_path() / "corpus_roundtrip2.json";
  save_coding_standards(corpus_path2.string(), standards);
  CHECK(load_coding_standards(corpus_path2.string()) == standards);
}

TEST_CASE("split_sentences") {
  CHECK(split_sentences("A. B.") == std::vector<std::string>{"A.", "B."});
  CHECK(split_sentences("Use `a.b` here. Next.") ==
        std::vector<std::string>{"Use `a.b` here.", "Next."});
  CHECK(split_sentences("no terminator at all") ==
        std::vector<std::string>{"no terminator at all"});
  CHECK(split_sentences("Version 1.2 applies. Done.") ==
        std::vector<std::string>{"Version 1.2 applies.", "Done."});
  CHECK(split_sentences("Really? Yes! Good.") ==
        std::vector<std::string>{"Really?", "Yes!", "Good."});
  CHECK(split_sentences("").empty());
}

TEST_CASE("shipped corpora match the documented counts") {
  const std::string data = LINTCC_DATA_DIR;
  CHECK(load_coding_standards(data + "/corpora/java_standards.json").size() == 68);
  CHECK(load_coding_standards(data + "/corpora/javascript_standards.json").size() == 149);
  CHECK(load_linter_docs(data + "/docs/checkstyle_docs.json").size() == 184);
  CHECK(load_linter_docs(data + "/docs/eslint_docs.json").size() == 291);
}
