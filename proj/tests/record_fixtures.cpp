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

// Regenerates the committed fixture artifacts: the fixture instruction set
// and the replay cache that lets the acceptance suite run the full pipeline
// offline. It records the scripted model's answers for the instruction
// build, the default compile of all fixture standards, the no-selector and
// no-dsl ablation variants, and a closed-book baseline pass.
//
//   ./lintcc_record_fixtures [data_dir]

#include <filesystem>
#include <iostream>

#include "lintcc/eval.hpp"
#include "lintcc/instructions.hpp"
#include "lintcc/pipeline.hpp"
#include "support/scripted_model.hpp"
#include "support/test_http.hpp"

using namespace lintcc;

int main(int argc, char** argv) {
  std::string data_dir = argc > 1 ? argv[1] : LINTCC_DATA_DIR;
  std::string cache_path = data_dir + "/replay/fixture_cache.jsonl";
  std::filesystem::create_directories(data_dir + "/replay");
  std::filesystem::remove(cache_path);

  testing::LocalModelServer server([](const std::string& prompt) {
    return testing::ScriptedModel::fixture().reply(prompt);
  });

  gateway::GatewayConfig config;
  config.mode = gateway::Mode::kRecord;
  config.base_url = server.base_url();
  config.model_id = "scripted-model";
  config.cache_path = cache_path;
  gateway::LlmGateway gw(config);

  auto docs = corpus::load_linter_docs(data_dir + "/fixtures/fixture_docs.json");
  auto standards =
      corpus::load_coding_standards(data_dir + "/fixtures/fixture_standards.json");

  instructions::InstructionBuilder builder(gw);
  instructions::BuildReport report;
  instructions::InstructionSet iset = builder.build_instruction_set(docs, &report);
  if (!report.failures.empty()) {
    for (const auto& [name, reason] : report.failures)
      std::cerr << "instruction build failed for " << name << ": " << reason << "\n";
    return 1;
  }
  instructions::save_instruction_set(data_dir + "/fixtures/fixture_instructions.json",
                                     iset);

  pipeline::Compiler compiler(gw, iset);
  std::size_t accepted_total = 0;
  for (const pipeline::CompileFlags& flags :
       {pipeline::CompileFlags{}, pipeline::CompileFlags{.no_selector = true},
        pipeline::CompileFlags{.no_dsl = true}}) {
    for (const corpus::CodingStandardDoc& standard : standards) {
      pipeline::CompilationResult result = compiler.compile(standard, {"checkstyle"}, flags);
      for (const pipeline::AlignedConfiguration& aligned : result.aligned)
        if (aligned.accepted) ++accepted_total;
    }
  }

  eval::BaselineRunner runner(gw, docs);
  for (const corpus::CodingStandardDoc& standard : standards)
    runner.run(eval::BaselineKind::kClosedBook, standard);

  std::cout << "recorded " << gw.cache_size() << " cache entries; " << accepted_total
            << " accepted configurations across variants\n";
  return 0;
}
