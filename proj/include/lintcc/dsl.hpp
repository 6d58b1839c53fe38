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

#ifndef LINTCC_DSL_HPP_
#define LINTCC_DSL_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lintcc/errors.hpp"

// The coding-rule DSL: the tool-agnostic intermediate representation shared
// by coding standards and linter configuration instructions.
//
// Concrete syntax, canonically formatted:
//
//   Mandatory: [CodeBlock] have [Brace]
//   Mandatory: No [EmptyDescription] for [@param, @return, @throws]
//   Mandatory: Order of [BlockTag] is [@param, @return, @throws]
//   Mandatory: Number of [BlankLine] between {tokens} is [1]
//   Optional: if [LeftCurlyPolicy] is [EOL] then [Enum] of [LeftCurly] is not [EOL]
//   Mandatory: [Line] have [LineWrap] Except [goog.module], [goog.require]
//
// Rules are joined with `; `. All types here are immutable values; every
// operation is pure.

namespace lintcc::dsl {

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::string expected)
      : Error("syntax error at byte " + std::to_string(offset) + ": expected " +
              expected),
        offset_(offset),
        expected_(std::move(expected)) {}
  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

class EmptyInputError : public Error {
 public:
  EmptyInputError() : Error("empty DSL input") {}
};

class UnknownPlaceholderError : public Error {
 public:
  explicit UnknownPlaceholderError(const std::string& name)
      : Error("unknown placeholder: {" + name + "}"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

enum class RuleType { kMandatory, kOptional };

std::string_view to_keyword(RuleType type);  // "Mandatory" / "Optional"

// One link of a Term's `of` chain: an optional single-word lowercase
// modifier plus a programming-language term (any text without newlines or
// the structural characters , ; [ ] at nesting depth zero).
struct TermPart {
  std::optional<std::string> modifier;
  std::string plterm;

  bool operator==(const TermPart&) const = default;
};

// A term is one or more parts joined by ` of `, e.g. `body of LoopStatement`.
struct Term {
  std::vector<TermPart> parts;

  std::string text() const;  // canonical rendering
  bool operator==(const Term&) const = default;
};

enum class TermListKind {
  kBracketed,    // [t1, t2, ...]
  kPlaceholder,  // {name}; exactly one term, no decomposition
};

struct TermList {
  TermListKind kind = TermListKind::kBracketed;
  std::vector<Term> terms;

  // Placeholder name; valid only for kPlaceholder lists.
  const std::string& placeholder_name() const { return terms.front().parts.front().plterm; }

  static TermList bracketed(std::vector<Term> terms);
  static TermList placeholder(std::string name);

  bool operator==(const TermList&) const = default;
};

// Free-text relation between term lists (`have`, `is not`, `>`, ...).
// Never empty, never contains brackets, braces or newlines.
struct Operator {
  std::string text;

  bool operator==(const Operator&) const = default;
};

struct Constraint;
using ConstraintPtr = std::shared_ptr<const Constraint>;

// TermList (Operator TermList)* (Operator)?; with no pairs the head list is
// simply required to be present. The optional trailing operator carries free
// text after the last term list, as in `[LineLength] > 80`.
struct RelationalConstraint {
  TermList head;
  std::vector<std::pair<Operator, TermList>> pairs;
  std::optional<Operator> tail;

  bool operator==(const RelationalConstraint&) const = default;
};

// `No` Constraint
struct NegationConstraint {
  ConstraintPtr inner;

  bool operator==(const NegationConstraint& other) const;
};

// `Order of` TermList (`is` | `is not`) TermList
struct OrderingConstraint {
  TermList subject;
  bool negated = false;
  TermList order;

  bool operator==(const OrderingConstraint&) const = default;
};

// `Number of` TermList (Operator TermList)* (Operator)?, with at least one
// operator present overall, as in `Number of [Annotation] = 1 for each [Line]`.
struct CountingConstraint {
  TermList counted;
  std::vector<std::pair<Operator, TermList>> pairs;
  std::optional<Operator> tail;

  bool operator==(const CountingConstraint&) const = default;
};

// `if` Constraint `then` Constraint
struct ConditionalConstraint {
  ConstraintPtr condition;
  ConstraintPtr consequence;

  bool operator==(const ConditionalConstraint& other) const;
};

struct Constraint {
  std::variant<RelationalConstraint, NegationConstraint, OrderingConstraint,
               CountingConstraint, ConditionalConstraint>
      node;

  bool operator==(const Constraint&) const = default;
};

struct DslRule {
  RuleType rule_type = RuleType::kMandatory;
  Constraint constraint;
  std::vector<Constraint> exceptions;

  bool operator==(const DslRule&) const = default;
};

struct RuleSet {
  std::vector<DslRule> rules;

  bool operator==(const RuleSet&) const = default;
};

// Parses DSL source text. Rule boundaries are top-level `;`. Throws
// EmptyInputError on blank input, SyntaxError (with byte offset and an
// expected-token hint) on malformed input.
RuleSet parse_rule_set(std::string_view text);

// Canonical rendering: one space between tokens, `, ` between terms,
// `; ` between rules. parse(format(rs)) is structurally equal to rs.
std::string format_rule_set(const RuleSet& rs);
std::string format_rule(const DslRule& rule);
std::string format_constraint(const Constraint& c);
std::string format_term_list(const TermList& list);

// Visits every TermList in the rule (constraint first, then exceptions),
// left to right in concrete-syntax order.
void for_each_term_list(const DslRule& rule,
                        const std::function<void(const TermList&)>& fn);

// Every bracketed TermList of constraint and exceptions, in left-to-right
// order. Placeholders are excluded.
std::vector<TermList> extract_checked_objects(const DslRule& rule);

// Distinct placeholder names in first-occurrence order.
std::vector<std::string> find_placeholders(const DslRule& rule);

// Replaces every `{name}` with a bracketed TermList of `values`. Other
// placeholders are untouched. Throws UnknownPlaceholderError if the rule has
// no such placeholder; values must be nonempty.
DslRule substitute_placeholder(const DslRule& rule, const std::string& name,
                               const std::vector<std::string>& values);

// Whitespace-insensitive structural equality (term text is compared
// case-sensitively). Equivalent to == on parsed values since parsing
// canonicalizes whitespace.
bool structural_eq(const DslRule& a, const DslRule& b);
bool structural_eq(const RuleSet& a, const RuleSet& b);

}  // namespace lintcc::dsl

#endif  // LINTCC_DSL_HPP_
