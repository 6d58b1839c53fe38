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

#include <set>
#include <string>
#include <vector>

#include "lintcc/dsl.hpp"
#include "support/generators.hpp"
#include "support/grammar_fixtures.hpp"

using namespace lintcc;
using namespace lintcc::dsl;

namespace {

DslRule parse_one(const std::string& text) {
  RuleSet rs = parse_rule_set(text);
  REQUIRE(rs.rules.size() == 1);
  return rs.rules[0];
}

// Independent count of [..] / {..} groups in canonical text: transitions
// from nesting depth 0 to 1.
int count_groups(const std::string& text, char open_bracket) {
  int depth = 0;
  int count = 0;
  for (char c : text) {
    if (c == '[' || c == '{') {
      if (depth == 0 && c == open_bracket) ++count;
      ++depth;
    }
    if (c == ']' || c == '}') --depth;
  }
  return count;
}

}  // namespace

TEST_CASE("parse: relational rule") {
  DslRule rule = parse_one("Mandatory: [CodeBlock] have [Brace]");
  CHECK(rule.rule_type == RuleType::kMandatory);
  const auto* rel = std::get_if<RelationalConstraint>(&rule.constraint.node);
  REQUIRE(rel != nullptr);
  CHECK(rel->head == TermList::bracketed({Term{{{std::nullopt, "CodeBlock"}}}}));
  REQUIRE(rel->pairs.size() == 1);
  CHECK(rel->pairs[0].first.text == "have");
  CHECK(rel->pairs[0].second == TermList::bracketed({Term{{{std::nullopt, "Brace"}}}}));
}

TEST_CASE("parse: ordering rule") {
  DslRule rule = parse_one(
      "Mandatory: Order of [BlockTag] is [@param, @return, @throws, @deprecated]");
  const auto* ord = std::get_if<OrderingConstraint>(&rule.constraint.node);
  REQUIRE(ord != nullptr);
  CHECK_FALSE(ord->negated);
  CHECK(ord->subject.terms.size() == 1);
  CHECK(ord->order.terms.size() == 4);
  CHECK(ord->order.terms[3].text() == "@deprecated");
}

TEST_CASE("parse: negation wraps relational") {
  DslRule rule = parse_one(
      "Mandatory: No [EmptyDescription] for [@param, @return, @throws, @deprecated]");
  const auto* neg = std::get_if<NegationConstraint>(&rule.constraint.node);
  REQUIRE(neg != nullptr);
  const auto* rel = std::get_if<RelationalConstraint>(&neg->inner->node);
  REQUIRE(rel != nullptr);
  CHECK(rel->head.terms[0].text() == "EmptyDescription");
  REQUIRE(rel->pairs.size() == 1);
  CHECK(rel->pairs[0].second.terms.size() == 4);
}

TEST_CASE("parse: blank input") {
  CHECK_THROWS_AS(parse_rule_set(""), EmptyInputError);
  CHECK_THROWS_AS(parse_rule_set("  \n \t"), EmptyInputError);
}

TEST_CASE("parse: malformed inputs carry offset and hint") {
  CHECK_THROWS_AS(parse_rule_set("Must: [A] have [B]"), SyntaxError);
  CHECK_THROWS_AS(parse_rule_set("Mandatory: [A have [B]"), SyntaxError);
  CHECK_THROWS_AS(parse_rule_set("Mandatory: []"), SyntaxError);
  CHECK_THROWS_AS(parse_rule_set("Mandatory: [A,\nB]"), SyntaxError);
  CHECK_THROWS_AS(parse_rule_set("Mandatory: [A] [B]"), SyntaxError);
  CHECK_THROWS_AS(parse_rule_set("Mandatory: if [A] have [B]"), SyntaxError);
  CHECK_THROWS_AS(parse_rule_set("Mandatory: Order of [A] was [B]"), SyntaxError);
  CHECK_THROWS_AS(parse_rule_set("Mandatory: Number of [A]"), SyntaxError);

  try {
    parse_rule_set("Mandatory: [A have [B]");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 11);  // the unclosed '['
    CHECK(e.expected() == "']'");
  }
}

TEST_CASE("parse: trailing free text after the last term list") {
  DslRule rule = parse_one("Mandatory: if [LineLength] > 80 then [Line] have [LineWrap]");
  const auto* cond = std::get_if<ConditionalConstraint>(&rule.constraint.node);
  REQUIRE(cond != nullptr);
  const auto* rel = std::get_if<RelationalConstraint>(&cond->condition->node);
  REQUIRE(rel != nullptr);
  CHECK(rel->pairs.empty());
  REQUIRE(rel->tail.has_value());
  CHECK(rel->tail->text == "> 80");
}

TEST_CASE("format: canonical rendering") {
  RuleSet rs = parse_rule_set("Mandatory:   [CodeBlock]   have   [Brace]");
  CHECK(format_rule_set(rs) == "Mandatory: [CodeBlock] have [Brace]");

  RuleSet two = parse_rule_set(
      "Mandatory: [CodeBlock] have [Brace];Optional: [body] of [LoopStatement] is [Empty]");
  REQUIRE(two.rules.size() == 2);
  CHECK(format_rule_set(two) ==
        "Mandatory: [CodeBlock] have [Brace]; "
        "Optional: [body] of [LoopStatement] is [Empty]");
}

TEST_CASE("grammar fixtures parse and re-format to canonical form") {
  for (const char* text : testing::kGrammarFixtures) {
    CAPTURE(text);
    RuleSet rs = parse_rule_set(text);
    CHECK(format_rule_set(rs) == text);
    // Idempotent canonicalization.
    CHECK(format_rule_set(parse_rule_set(format_rule_set(rs))) == text);
  }
}

TEST_CASE("round-trip property: parse(format(t)) == t over 200 sampled ASTs") {
  testing::AstSampler sampler(20260810);
  for (int i = 0; i < 200; ++i) {
    RuleSet t = sampler.rule_set();
    std::string text = format_rule_set(t);
    CAPTURE(text);
    RuleSet back = parse_rule_set(text);
    REQUIRE(structural_eq(back, t));
  }
}

TEST_CASE("extract_checked_objects") {
  SUBCASE("direct traversal") {
    DslRule rule = parse_one("Mandatory: [CodeBlock] have [Brace]");
    auto objs = extract_checked_objects(rule);
    REQUIRE(objs.size() == 2);
    CHECK(format_term_list(objs[0]) == "[CodeBlock]");
    CHECK(format_term_list(objs[1]) == "[Brace]");
  }
  SUBCASE("placeholders excluded") {
    DslRule rule = parse_one("Mandatory: Number of [BlankLine] between {tokens} is [1]");
    auto objs = extract_checked_objects(rule);
    REQUIRE(objs.size() == 2);
    CHECK(format_term_list(objs[0]) == "[BlankLine]");
    CHECK(format_term_list(objs[1]) == "[1]");
  }
  SUBCASE("negation rule, left-to-right") {
    DslRule rule = parse_one(
        "Mandatory: No [EmptyDescription] for [@param, @return, @throws, @deprecated]");
    auto objs = extract_checked_objects(rule);
    REQUIRE(objs.size() == 2);
    CHECK(format_term_list(objs[0]) == "[EmptyDescription]");
    CHECK(format_term_list(objs[1]) == "[@param, @return, @throws, @deprecated]");
  }
}

TEST_CASE("find_placeholders") {
  CHECK(find_placeholders(parse_one("Mandatory: [Javadoc] for {tokens}")) ==
        std::vector<std::string>{"tokens"});
  CHECK(find_placeholders(parse_one("Mandatory: [Javadoc] for [PublicClass]")).empty());
  CHECK(find_placeholders(parse_one("Mandatory: {tokens} have {tokens}")) ==
        std::vector<std::string>{"tokens"});
}

TEST_CASE("substitute_placeholder") {
  DslRule rule = parse_one("Mandatory: Number of [BlankLine] between {tokens} is [1]");

  SUBCASE("replaces the placeholder with a bracketed list") {
    DslRule out = substitute_placeholder(rule, "tokens", {"PACKAGE_DEF", "CLASS_DEF"});
    CHECK(format_rule(out) ==
          "Mandatory: Number of [BlankLine] between [PACKAGE_DEF, CLASS_DEF] is [1]");
  }
  SUBCASE("unknown placeholder") {
    CHECK_THROWS_AS(substitute_placeholder(rule, "missing", {"x"}),
                    UnknownPlaceholderError);
  }
  SUBCASE("substitution removes the name from find_placeholders") {
    DslRule out = substitute_placeholder(rule, "tokens", {"PACKAGE_DEF"});
    CHECK(find_placeholders(out).empty());
  }
  SUBCASE("preserves rule type and exception count") {
    DslRule with_exc = parse_one(
        "Optional: [Javadoc] for {tokens} Except [A] have [B], [C] have [D]");
    DslRule out = substitute_placeholder(with_exc, "tokens", {"CLASS_DEF"});
    CHECK(out.rule_type == with_exc.rule_type);
    CHECK(out.exceptions.size() == with_exc.exceptions.size());
  }
}

TEST_CASE("structural_eq") {
  DslRule a = parse_one("Mandatory: [A] have [B]");
  CHECK(structural_eq(a, a));
  CHECK(structural_eq(a, parse_one("Mandatory:  [A]  have  [B]")));
  CHECK_FALSE(structural_eq(a, parse_one("Optional: [A] have [B]")));
  CHECK_FALSE(structural_eq(a, parse_one("Mandatory: [a] have [B]")));  // case matters
}

TEST_CASE("coverage property: objects plus placeholders cover every group once") {
  testing::AstSampler sampler(42);
  for (int i = 0; i < 100; ++i) {
    DslRule rule = sampler.rule();
    std::string text = format_rule(rule);
    int placeholder_occurrences = 0;
    for_each_term_list(rule, [&](const TermList& l) {
      if (l.kind == TermListKind::kPlaceholder) ++placeholder_occurrences;
    });
    CHECK(static_cast<int>(extract_checked_objects(rule).size()) ==
          count_groups(text, '['));
    CHECK(placeholder_occurrences == count_groups(text, '{'));
  }
}

TEST_CASE("substitution property over sampled rules") {
  testing::AstSampler sampler(7);
  int exercised = 0;
  for (int i = 0; i < 200 && exercised < 50; ++i) {
    DslRule rule = sampler.rule();
    auto names = find_placeholders(rule);
    if (names.empty()) continue;
    ++exercised;
    DslRule out = substitute_placeholder(rule, names[0], {"PACKAGE_DEF", "CLASS_DEF"});
    CHECK(out.rule_type == rule.rule_type);
    CHECK(out.exceptions.size() == rule.exceptions.size());
    auto left = find_placeholders(out);
    CHECK(std::find(left.begin(), left.end(), names[0]) == left.end());
  }
  CHECK(exercised >= 20);
}
