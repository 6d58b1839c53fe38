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

#include "lintcc/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lintcc::dsl {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool is_lower_word(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](unsigned char c) {
    return std::islower(c) != 0;
  });
}

std::string collapse_ws(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool in_space = true;  // drops leading whitespace
  for (char c : s) {
    if (is_space(c)) {
      in_space = true;
    } else {
      if (in_space && !out.empty()) out.push_back(' ');
      in_space = false;
      out.push_back(c);
    }
  }
  return out;
}

// True when `word` occurs at `pos` in `text` delimited by whitespace,
// string edges, or a comma on the right.
bool word_at(std::string_view text, std::size_t pos, std::string_view word) {
  if (text.substr(pos, word.size()) != word) return false;
  if (pos > 0 && !is_space(text[pos - 1])) return false;
  std::size_t after = pos + word.size();
  return after == text.size() || is_space(text[after]) || text[after] == ',';
}

// Splits a term's text on ` of ` at brace/bracket depth zero and decomposes
// each segment into an optional lowercase modifier plus a PLterm.
Term parse_term_text(std::string_view collapsed, std::size_t offset) {
  Term term;
  std::size_t seg_start = 0;
  int depth = 0;
  auto flush = [&](std::size_t end) {
    std::string_view seg = collapsed.substr(seg_start, end - seg_start);
    while (!seg.empty() && seg.front() == ' ') seg.remove_prefix(1);
    while (!seg.empty() && seg.back() == ' ') seg.remove_suffix(1);
    if (seg.empty()) throw SyntaxError(offset + seg_start, "term around 'of'");
    TermPart part;
    std::size_t space = seg.find(' ');
    if (space != std::string_view::npos && is_lower_word(seg.substr(0, space))) {
      part.modifier = std::string(seg.substr(0, space));
      part.plterm = std::string(seg.substr(space + 1));
    } else {
      part.plterm = std::string(seg);
    }
    term.parts.push_back(std::move(part));
  };
  for (std::size_t i = 0; i < collapsed.size(); ++i) {
    char c = collapsed[i];
    if (c == '[' || c == '{') ++depth;
    if (c == ']' || c == '}') --depth;
    if (depth == 0 && collapsed.substr(i, 4) == " of " ) {
      flush(i);
      seg_start = i + 4;
      i += 3;
    }
  }
  flush(collapsed.size());
  return term;
}

// Recursive-descent parser over the full source text; all offsets in errors
// are absolute byte positions into that text.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RuleSet parse() {
    if (collapse_ws(text_).empty()) throw EmptyInputError();
    check_balance();
    RuleSet rs;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i < text_.size(); ++i) {
      char c = text_[i];
      if (c == '[' || c == '{') ++depth;
      if (c == ']' || c == '}') --depth;
      if (c == ';' && depth == 0) {
        if (!blank(start, i)) rs.rules.push_back(parse_rule(start, i));
        start = i + 1;
      }
    }
    if (!blank(start, text_.size()))
      rs.rules.push_back(parse_rule(start, text_.size()));
    if (rs.rules.empty()) throw SyntaxError(0, "at least one rule");
    return rs;
  }

 private:
  std::string_view text_;

  bool blank(std::size_t b, std::size_t e) const {
    for (std::size_t i = b; i < e; ++i)
      if (!is_space(text_[i])) return false;
    return true;
  }

  void check_balance() const {
    std::vector<std::size_t> openers;
    for (std::size_t i = 0; i < text_.size(); ++i) {
      char c = text_[i];
      if (c == '[' || c == '{') openers.push_back(i);
      if (c == ']' || c == '}') {
        if (openers.empty()) throw SyntaxError(i, "matching '[' or '{'");
        char open = text_[openers.back()];
        if ((c == ']') != (open == '[')) throw SyntaxError(i, open == '[' ? "']'" : "'}'");
        openers.pop_back();
      }
    }
    if (!openers.empty())
      throw SyntaxError(openers.back(), text_[openers.back()] == '[' ? "']'" : "'}'");
  }

  std::size_t skip_ws(std::size_t i, std::size_t end) const {
    while (i < end && is_space(text_[i])) ++i;
    return i;
  }

  DslRule parse_rule(std::size_t b, std::size_t e) {
    b = skip_ws(b, e);
    DslRule rule;
    if (text_.substr(b, 10) == "Mandatory:") {
      rule.rule_type = RuleType::kMandatory;
      b += 10;
    } else if (text_.substr(b, 9) == "Optional:") {
      rule.rule_type = RuleType::kOptional;
      b += 9;
    } else {
      throw SyntaxError(b, "'Mandatory:' or 'Optional:'");
    }

    // Split off exception constraints at the first top-level `Except`.
    std::size_t except_at = e;
    int depth = 0;
    for (std::size_t i = b; i < e; ++i) {
      char c = text_[i];
      if (c == '[' || c == '{') ++depth;
      if (c == ']' || c == '}') --depth;
      if (depth == 0 && word_at(text_, i, "Except")) {
        except_at = i;
        break;
      }
    }
    rule.constraint = parse_constraint(b, except_at);
    if (except_at < e) {
      std::size_t pos = except_at + 6;
      // Further `Except` keywords and top-level commas both separate
      // exception constraints.
      std::size_t seg = pos;
      depth = 0;
      for (std::size_t i = pos; i < e; ++i) {
        char c = text_[i];
        if (c == '[' || c == '{') ++depth;
        if (c == ']' || c == '}') --depth;
        bool sep = depth == 0 && (c == ',' || word_at(text_, i, "Except"));
        if (!sep) continue;
        rule.exceptions.push_back(parse_constraint(seg, i));
        seg = i + (c == ',' ? 1 : 6);
        if (c != ',') i += 5;
      }
      rule.exceptions.push_back(parse_constraint(seg, e));
    }
    return rule;
  }

  Constraint parse_constraint(std::size_t b, std::size_t e) {
    b = skip_ws(b, e);
    while (e > b && is_space(text_[e - 1])) --e;
    if (b >= e) throw SyntaxError(b, "constraint");

    if (word_at(text_, b, "No"))
      return Constraint{NegationConstraint{
          std::make_shared<const Constraint>(parse_constraint(b + 2, e))}};

    if (word_at(text_, b, "if")) {
      // `then` binds to the nearest unmatched `if`.
      int depth = 0;
      int if_depth = 0;
      for (std::size_t i = b + 2; i < e; ++i) {
        char c = text_[i];
        if (c == '[' || c == '{') ++depth;
        if (c == ']' || c == '}') --depth;
        if (depth != 0) continue;
        if (word_at(text_, i, "if")) ++if_depth;
        if (word_at(text_, i, "then")) {
          if (if_depth > 0) {
            --if_depth;
            continue;
          }
          return Constraint{ConditionalConstraint{
              std::make_shared<const Constraint>(parse_constraint(b + 2, i)),
              std::make_shared<const Constraint>(parse_constraint(i + 4, e))}};
        }
      }
      throw SyntaxError(e, "'then'");
    }

    if (word_at(text_, b, "Order")) {
      std::size_t i = skip_ws(b + 5, e);
      if (!word_at(text_, i, "of")) throw SyntaxError(i, "'of'");
      i = skip_ws(i + 2, e);
      OrderingConstraint ord;
      ord.subject = parse_term_list(i, e);
      i = skip_ws(i, e);
      if (!word_at(text_, i, "is")) throw SyntaxError(i, "'is'");
      i = skip_ws(i + 2, e);
      if (word_at(text_, i, "not")) {
        ord.negated = true;
        i = skip_ws(i + 3, e);
      }
      ord.order = parse_term_list(i, e);
      i = skip_ws(i, e);
      if (i < e) throw SyntaxError(i, "end of ordering constraint");
      return Constraint{std::move(ord)};
    }

    if (word_at(text_, b, "Number")) {
      std::size_t i = skip_ws(b + 6, e);
      if (!word_at(text_, i, "of")) throw SyntaxError(i, "'of'");
      i = skip_ws(i + 2, e);
      CountingConstraint cnt;
      cnt.counted = parse_term_list(i, e);
      cnt.pairs = parse_pairs(i, e, cnt.tail);
      if (cnt.pairs.empty() && !cnt.tail)
        throw SyntaxError(i, "operator after counted term list");
      return Constraint{std::move(cnt)};
    }

    RelationalConstraint rel;
    std::size_t i = b;
    rel.head = parse_term_list(i, e);
    rel.pairs = parse_pairs(i, e, rel.tail);
    return Constraint{std::move(rel)};
  }

  // Zero or more (Operator, TermList) pairs starting at `i`; text after the
  // last term list becomes the trailing operator.
  std::vector<std::pair<Operator, TermList>> parse_pairs(
      std::size_t& i, std::size_t e, std::optional<Operator>& tail) {
    std::vector<std::pair<Operator, TermList>> pairs;
    while (true) {
      std::size_t op_begin = skip_ws(i, e);
      if (op_begin >= e) break;
      std::size_t op_end = op_begin;
      while (op_end < e && text_[op_end] != '[' && text_[op_end] != '{') ++op_end;
      std::string op = collapse_ws(text_.substr(op_begin, op_end - op_begin));
      if (op_end >= e) {
        tail = Operator{std::move(op)};
        i = op_end;
        break;
      }
      if (op.empty())
        throw SyntaxError(op_begin, "operator between term lists");
      i = op_end;
      TermList list = parse_term_list(i, e);
      pairs.emplace_back(Operator{std::move(op)}, std::move(list));
    }
    return pairs;
  }

  // Parses one `[...]` or `{...}` group at `i` (advanced past the group).
  TermList parse_term_list(std::size_t& i, std::size_t e) {
    i = skip_ws(i, e);
    if (i >= e || (text_[i] != '[' && text_[i] != '{'))
      throw SyntaxError(i, "'[' or '{'");

    if (text_[i] == '{') {
      std::size_t open = i++;
      std::size_t start = i;
      while (i < e && text_[i] != '}') {
        if (text_[i] == '\n') throw SyntaxError(i, "'}' before newline");
        if (text_[i] == '[' || text_[i] == '{')
          throw SyntaxError(i, "'}' (placeholders cannot nest)");
        ++i;
      }
      if (i >= e) throw SyntaxError(open, "'}'");
      std::string name = collapse_ws(text_.substr(start, i - start));
      ++i;
      if (name.empty()) throw SyntaxError(open + 1, "placeholder name");
      return TermList::placeholder(std::move(name));
    }

    std::size_t open = i++;
    int depth = 1;
    std::vector<std::pair<std::size_t, std::size_t>> pieces;
    std::size_t piece_start = i;
    for (; i < e; ++i) {
      char c = text_[i];
      if (c == '\n') throw SyntaxError(i, "']' before newline");
      if (c == '[' || c == '{') ++depth;
      if (c == ']' || c == '}') {
        --depth;
        if (depth == 0) break;
      }
      if (c == ',' && depth == 1) {
        pieces.emplace_back(piece_start, i);
        piece_start = i + 1;
      }
    }
    if (i >= e) throw SyntaxError(open, "']'");
    pieces.emplace_back(piece_start, i);
    ++i;

    TermList list;
    list.kind = TermListKind::kBracketed;
    for (auto [pb, pe] : pieces) {
      std::string piece = collapse_ws(text_.substr(pb, pe - pb));
      if (piece.empty()) throw SyntaxError(pb, "term");
      list.terms.push_back(parse_term_text(piece, pb));
    }
    return list;
  }
};

void visit_constraint(const Constraint& c,
                      const std::function<void(const TermList&)>& fn) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, RelationalConstraint>) {
          fn(node.head);
          for (const auto& [op, list] : node.pairs) fn(list);
        } else if constexpr (std::is_same_v<T, NegationConstraint>) {
          visit_constraint(*node.inner, fn);
        } else if constexpr (std::is_same_v<T, OrderingConstraint>) {
          fn(node.subject);
          fn(node.order);
        } else if constexpr (std::is_same_v<T, CountingConstraint>) {
          fn(node.counted);
          for (const auto& [op, list] : node.pairs) fn(list);
        } else if constexpr (std::is_same_v<T, ConditionalConstraint>) {
          visit_constraint(*node.condition, fn);
          visit_constraint(*node.consequence, fn);
        }
      },
      c.node);
}

// Rebuilds a constraint with every `{name}` replaced by `replacement`.
Constraint substitute_in_constraint(const Constraint& c, const std::string& name,
                                    const TermList& replacement, bool& found) {
  auto map_list = [&](const TermList& list) -> TermList {
    if (list.kind == TermListKind::kPlaceholder && list.placeholder_name() == name) {
      found = true;
      return replacement;
    }
    return list;
  };
  return std::visit(
      [&](const auto& node) -> Constraint {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, RelationalConstraint>) {
          RelationalConstraint out;
          out.head = map_list(node.head);
          for (const auto& [op, list] : node.pairs)
            out.pairs.emplace_back(op, map_list(list));
          out.tail = node.tail;
          return Constraint{std::move(out)};
        } else if constexpr (std::is_same_v<T, NegationConstraint>) {
          return Constraint{NegationConstraint{std::make_shared<const Constraint>(
              substitute_in_constraint(*node.inner, name, replacement, found))}};
        } else if constexpr (std::is_same_v<T, OrderingConstraint>) {
          OrderingConstraint out = node;
          out.subject = map_list(node.subject);
          out.order = map_list(node.order);
          return Constraint{std::move(out)};
        } else if constexpr (std::is_same_v<T, CountingConstraint>) {
          CountingConstraint out;
          out.counted = map_list(node.counted);
          for (const auto& [op, list] : node.pairs)
            out.pairs.emplace_back(op, map_list(list));
          out.tail = node.tail;
          return Constraint{std::move(out)};
        } else {
          return Constraint{ConditionalConstraint{
              std::make_shared<const Constraint>(substitute_in_constraint(
                  *node.condition, name, replacement, found)),
              std::make_shared<const Constraint>(substitute_in_constraint(
                  *node.consequence, name, replacement, found))}};
        }
      },
      c.node);
}

void format_pairs(std::ostringstream& out,
                  const std::vector<std::pair<Operator, TermList>>& pairs,
                  const std::optional<Operator>& tail) {
  for (const auto& [op, list] : pairs)
    out << ' ' << op.text << ' ' << format_term_list(list);
  if (tail) out << ' ' << tail->text;
}

}  // namespace

std::string_view to_keyword(RuleType type) {
  return type == RuleType::kMandatory ? "Mandatory" : "Optional";
}

std::string Term::text() const {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += " of ";
    if (parts[i].modifier) {
      out += *parts[i].modifier;
      out += ' ';
    }
    out += parts[i].plterm;
  }
  return out;
}

TermList TermList::bracketed(std::vector<Term> terms) {
  return TermList{TermListKind::kBracketed, std::move(terms)};
}

TermList TermList::placeholder(std::string name) {
  return TermList{TermListKind::kPlaceholder,
                  {Term{{TermPart{std::nullopt, std::move(name)}}}}};
}

bool NegationConstraint::operator==(const NegationConstraint& other) const {
  return *inner == *other.inner;
}

bool ConditionalConstraint::operator==(const ConditionalConstraint& other) const {
  return *condition == *other.condition && *consequence == *other.consequence;
}

RuleSet parse_rule_set(std::string_view text) { return Parser(text).parse(); }

std::string format_term_list(const TermList& list) {
  if (list.kind == TermListKind::kPlaceholder)
    return "{" + list.placeholder_name() + "}";
  std::string out = "[";
  for (std::size_t i = 0; i < list.terms.size(); ++i) {
    if (i > 0) out += ", ";
    out += list.terms[i].text();
  }
  out += ']';
  return out;
}

std::string format_constraint(const Constraint& c) {
  std::ostringstream out;
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, RelationalConstraint>) {
          out << format_term_list(node.head);
          format_pairs(out, node.pairs, node.tail);
        } else if constexpr (std::is_same_v<T, NegationConstraint>) {
          out << "No " << format_constraint(*node.inner);
        } else if constexpr (std::is_same_v<T, OrderingConstraint>) {
          out << "Order of " << format_term_list(node.subject)
              << (node.negated ? " is not " : " is ") << format_term_list(node.order);
        } else if constexpr (std::is_same_v<T, CountingConstraint>) {
          out << "Number of " << format_term_list(node.counted);
          format_pairs(out, node.pairs, node.tail);
        } else if constexpr (std::is_same_v<T, ConditionalConstraint>) {
          out << "if " << format_constraint(*node.condition) << " then "
              << format_constraint(*node.consequence);
        }
      },
      c.node);
  return out.str();
}

std::string format_rule(const DslRule& rule) {
  std::string out(to_keyword(rule.rule_type));
  out += ": ";
  out += format_constraint(rule.constraint);
  if (!rule.exceptions.empty()) {
    out += " Except ";
    for (std::size_t i = 0; i < rule.exceptions.size(); ++i) {
      if (i > 0) out += ", ";
      out += format_constraint(rule.exceptions[i]);
    }
  }
  return out;
}

std::string format_rule_set(const RuleSet& rs) {
  std::string out;
  for (std::size_t i = 0; i < rs.rules.size(); ++i) {
    if (i > 0) out += "; ";
    out += format_rule(rs.rules[i]);
  }
  return out;
}

void for_each_term_list(const DslRule& rule,
                        const std::function<void(const TermList&)>& fn) {
  visit_constraint(rule.constraint, fn);
  for (const Constraint& ex : rule.exceptions) visit_constraint(ex, fn);
}

std::vector<TermList> extract_checked_objects(const DslRule& rule) {
  std::vector<TermList> out;
  for_each_term_list(rule, [&](const TermList& list) {
    if (list.kind == TermListKind::kBracketed) out.push_back(list);
  });
  return out;
}

std::vector<std::string> find_placeholders(const DslRule& rule) {
  std::vector<std::string> out;
  for_each_term_list(rule, [&](const TermList& list) {
    if (list.kind != TermListKind::kPlaceholder) return;
    const std::string& name = list.placeholder_name();
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  });
  return out;
}

DslRule substitute_placeholder(const DslRule& rule, const std::string& name,
                               const std::vector<std::string>& values) {
  if (values.empty()) throw Error("substitute_placeholder: values must be nonempty");
  TermList replacement;
  replacement.kind = TermListKind::kBracketed;
  for (const std::string& value : values) {
    std::string collapsed = collapse_ws(value);
    if (collapsed.empty())
      throw Error("substitute_placeholder: blank substitution value");
    replacement.terms.push_back(parse_term_text(collapsed, 0));
  }

  bool found = false;
  DslRule out;
  out.rule_type = rule.rule_type;
  out.constraint = substitute_in_constraint(rule.constraint, name, replacement, found);
  for (const Constraint& ex : rule.exceptions)
    out.exceptions.push_back(substitute_in_constraint(ex, name, replacement, found));
  if (!found) throw UnknownPlaceholderError(name);
  return out;
}

bool structural_eq(const DslRule& a, const DslRule& b) { return a == b; }

bool structural_eq(const RuleSet& a, const RuleSet& b) { return a == b; }

}  // namespace lintcc::dsl
