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

#ifndef LINTCC_TESTS_SUPPORT_GRAMMAR_FIXTURES_HPP_
#define LINTCC_TESTS_SUPPORT_GRAMMAR_FIXTURES_HPP_

namespace lintcc::testing {

// Canonical DSL strings covering every constraint form, including the
// ordering, counting and conditional variants, `Except` lists, placeholders
// and multi-word terms. Each one must parse and re-format to itself.
inline constexpr const char* kGrammarFixtures[] = {
    "Mandatory: [CodeBlock] have [Brace]",
    "Mandatory: No [EmptyDescription] for [@param, @return, @throws, @deprecated]",
    "Mandatory: Order of [BlockTag] is [@param, @return, @throws, @deprecated]",
    "Mandatory: Number of [Annotation] = 1 for each [Line]",
    "Optional: if [LeftCurlyPolicy] is [EOL] then [Enum] of [LeftCurly] is not [EOL]",
    "Mandatory: if [LineLength] > 80 then [Line] have [LineWrap] Except "
    "[goog.module], [goog.require], [goog.requireType]",
    "Optional: [body] of [LoopStatement] is [Empty]",
    "Mandatory: No [this, super] before [super()] in [Constructors]",
    "Mandatory: Number of [BlankLine] between {tokens} is [1]",
    "Mandatory: Number of [BlankLine] between [PACKAGE_DEF, CLASS_DEF] is [1]",
    "Mandatory: [Javadoc] for [PublicClass]",
    "Mandatory: [Javadoc] for [class, enum, interface, annotation interface definitions]",
    "Mandatory: [Javadoc] for {tokens}",
    "Mandatory: [Scope] of [Javadoc] is [Public]",
    "Optional: [Comment] matches [fallthru, fall thru, ...] suppress [Warning]",
    "Mandatory: [JavadocSummary] not have {forbiddenSummaryFragments}",
    "Mandatory: [PackageName] matches [^[a-z]+(\\.[a-z][a-z0-9]*)*$]",
    "Optional: Order of [ImportStatement] is not [StaticImport, RegularImport]",
};

}  // namespace lintcc::testing

#endif  // LINTCC_TESTS_SUPPORT_GRAMMAR_FIXTURES_HPP_
