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

#include "lintcc/emitters.hpp"
#include "support/config_sampler.hpp"
#include "support/test_http.hpp"

using namespace lintcc;
using namespace lintcc::emitters;

namespace {

pipeline::AlignedConfiguration accepted(const std::string& name,
                                        std::vector<std::pair<std::string, std::string>>
                                            assignments = {}) {
  pipeline::AlignedConfiguration out;
  out.candidate.config_name = name;
  for (auto& [option, value] : assignments) {
    pipeline::Assignment a;
    a.option_name = option;
    a.option_value = value;
    out.candidate.assignments.push_back(std::move(a));
  }
  out.verdicts = {pipeline::Verdict::kPass, pipeline::Verdict::kPass,
                  pipeline::Verdict::kPass, {}};
  out.accepted = true;
  return out;
}

const XmlNode* find_module(const XmlNode& parent, const std::string& name) {
  for (const XmlNode& child : parent.children) {
    if (child.name != "module") continue;
    const std::string* attr = child.attribute("name");
    if (attr != nullptr && *attr == name) return &child;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("render_checkstyle: tree checks nest under TreeWalker") {
  auto emitted = render_checkstyle({accepted("PackageDeclaration")});
  CHECK(emitted.validated);
  XmlNode root = parse_xml(emitted.text);
  CHECK(root.name == "module");
  CHECK(*root.attribute("name") == "Checker");
  const XmlNode* walker = find_module(root, "TreeWalker");
  REQUIRE(walker != nullptr);
  CHECK(find_module(*walker, "PackageDeclaration") != nullptr);
}

TEST_CASE("render_checkstyle: checker-direct modules stay at the top level") {
  auto emitted = render_checkstyle(
      {accepted("LineLength", {{"max", "100"}}), accepted("NeedBraces")});
  XmlNode root = parse_xml(emitted.text);
  const XmlNode* line_length = find_module(root, "LineLength");
  REQUIRE(line_length != nullptr);
  REQUIRE(line_length->children.size() == 1);
  CHECK(*line_length->children[0].attribute("value") == "100");
  CHECK(find_module(root, "NeedBraces") == nullptr);  // nested, not top-level
  const XmlNode* walker = find_module(root, "TreeWalker");
  REQUIRE(walker != nullptr);
  CHECK(find_module(*walker, "NeedBraces") != nullptr);
}

TEST_CASE("render_checkstyle: empty input yields a valid empty Checker") {
  auto emitted = render_checkstyle({});
  CHECK(emitted.validated);
  XmlNode root = parse_xml(emitted.text);
  CHECK(root.children.empty());
}

TEST_CASE("render_checkstyle: unaccepted candidates are refused") {
  pipeline::AlignedConfiguration rejected = accepted("NeedBraces");
  rejected.accepted = false;
  CHECK_THROWS_AS(render_checkstyle({rejected}), UnacceptedCandidateError);
}

TEST_CASE("render_checkstyle: hostile values are escaped and re-parse") {
  auto emitted = render_checkstyle(
      {accepted("RegexpSingleline", {{"format", "a < b && \"c\" > 'd'"}})});
  CHECK(emitted.validated);
  XmlNode root = parse_xml(emitted.text);
  const XmlNode* module = find_module(root, "RegexpSingleline");
  REQUIRE(module != nullptr);
  CHECK(*module->children[0].attribute("value") == "a < b && \"c\" > 'd'");
}

TEST_CASE("render_eslint: severity-only and typed options") {
  auto types = testing::ConfigSampler::option_types();
  auto emitted = render_eslint({accepted("curly"),
                                accepted("max-len", {{"max", "100"},
                                                     {"allowUrls", "true"},
                                                     {"tokens", "b, a"}})},
                               types);
  CHECK(emitted.validated);
  auto doc = nlohmann::ordered_json::parse(emitted.text);
  CHECK(doc["rules"]["curly"] == nlohmann::ordered_json::array({"error"}));
  const auto& options = doc["rules"]["max-len"][1];
  CHECK(options["max"] == 100);          // integer, not string
  CHECK(options["allowUrls"] == true);   // boolean, not string
  CHECK(options["tokens"][0] == "b");    // comma list becomes an array

  // Canonical re-render is byte-identical.
  CHECK(nlohmann::ordered_json::parse(emitted.text).dump(2) + "\n" == emitted.text);
}

TEST_CASE("render_eslint: coercion failures are reported") {
  auto types = testing::ConfigSampler::option_types();
  CHECK_THROWS_AS(render_eslint({accepted("max-len", {{"max", "wide"}})}, types),
                  TypeCoercionError);
  CHECK_THROWS_AS(render_eslint({accepted("x", {{"allowFoo", "yes"}})}, types),
                  TypeCoercionError);
}

TEST_CASE("validate_emitted rejects malformed documents") {
  EmittedConfig bad_rules{Target::kEslintJson, R"({"rules":[]})", false};
  auto result = validate_emitted(bad_rules);
  CHECK_FALSE(result.ok);
  REQUIRE(!result.diagnostics.empty());

  EmittedConfig bad_severity{Target::kEslintJson,
                             R"({"rules":{"curly":["sometimes"]}})", false};
  CHECK_FALSE(validate_emitted(bad_severity).ok);

  EmittedConfig not_checker{Target::kCheckstyleXml,
                            "<module name=\"TreeWalker\"/>", false};
  CHECK_FALSE(validate_emitted(not_checker).ok);

  EmittedConfig alien_element{
      Target::kCheckstyleXml,
      "<module name=\"Checker\"><rule name=\"x\"/></module>", false};
  CHECK_FALSE(validate_emitted(alien_element).ok);

  EmittedConfig broken{Target::kCheckstyleXml, "<module name=", false};
  CHECK_FALSE(validate_emitted(broken).ok);
}

TEST_CASE("validate_emitted accepts a hand-written Google-style snippet") {
  EmittedConfig snippet{Target::kCheckstyleXml, R"(<?xml version="1.0"?>
<!DOCTYPE module PUBLIC
          "-//Checkstyle//DTD Checkstyle Configuration 1.3//EN"
          "https://checkstyle.org/dtds/configuration_1_3.dtd">
<module name="Checker">
  <property name="charset" value="UTF-8"/>
  <module name="TreeWalker">
    <!-- javadoc ordering -->
    <module name="AtclauseOrder">
      <property name="tagOrder" value="@param, @return, @throws, @deprecated"/>
      <property name="target"
                value="CLASS_DEF, INTERFACE_DEF, ENUM_DEF, METHOD_DEF, CTOR_DEF, VARIABLE_DEF"/>
    </module>
  </module>
</module>)",
                        false};
  auto result = validate_emitted(snippet);
  CHECK(result.ok);
}

TEST_CASE("property: sampled accepted sets render valid and byte-stable output") {
  testing::ConfigSampler sampler(20260810);
  auto types = testing::ConfigSampler::option_types();
  for (int i = 0; i < 60; ++i) {
    auto configs = sampler.accepted_set();

    auto xml = render_checkstyle(configs);
    CHECK(xml.validated);
    CHECK_NOTHROW(parse_xml(xml.text));
    CHECK(render_checkstyle(configs).text == xml.text);

    auto json = render_eslint(configs, types);
    CHECK(json.validated);
    CHECK(render_eslint(configs, types).text == json.text);
    CHECK(nlohmann::ordered_json::parse(json.text).dump(2) + "\n" == json.text);
  }
}

TEST_CASE("llm_render validates, repairs and falls back") {
  // First response invalid, repaired response valid.
  int calls = 0;
  testing::LocalModelServer server([&calls](const std::string& prompt) {
    ++calls;
    if (prompt.find("could not be used") != std::string::npos)
      return std::string("<module name=\"Checker\"/>");
    return std::string("this is not xml");
  });
  gateway::GatewayConfig config;
  config.mode = gateway::Mode::kLive;
  config.base_url = server.base_url();
  gateway::LlmGateway gw(config);

  std::vector<std::string> warnings;
  auto emitted = llm_render(gw, Target::kCheckstyleXml, {},
                            testing::ConfigSampler::option_types(), &warnings);
  CHECK(emitted.validated);
  CHECK(calls == 2);
  CHECK(warnings.empty());
  CHECK(emitted.text.find("Checker") != std::string::npos);

  // Invalid twice: deterministic fallback, result still validated.
  testing::LocalModelServer stubborn([](const std::string&) {
    return std::string("still not xml");
  });
  gateway::GatewayConfig config2;
  config2.mode = gateway::Mode::kLive;
  config2.base_url = stubborn.base_url();
  gateway::LlmGateway gw2(config2);
  std::vector<std::string> warnings2;
  auto fallback = llm_render(gw2, Target::kCheckstyleXml, {accepted("NeedBraces")},
                             testing::ConfigSampler::option_types(), &warnings2);
  CHECK(fallback.validated);
  REQUIRE(warnings2.size() == 1);
  XmlNode root = parse_xml(fallback.text);
  const XmlNode* walker = find_module(root, "TreeWalker");
  REQUIRE(walker != nullptr);
  CHECK(find_module(*walker, "NeedBraces") != nullptr);
}
