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

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lintcc/emitters.hpp"
#include "lintcc/eval.hpp"
#include "lintcc/instructions.hpp"
#include "lintcc/parallel.hpp"
#include "lintcc/pipeline.hpp"

namespace {

using namespace lintcc;

// Exit codes: 0 success, 1 input or configuration error, 2 partial model
// failures.
constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kPartialFailure = 2;

struct GatewayFlags {
  std::string mode = "replay";
  std::string cache;
  std::string model;
  std::string base_url;
  int parallelism = 4;

  void attach(CLI::App* cmd) {
    cmd->add_option("--mode", mode, "live, record or replay")
        ->check(CLI::IsMember({"live", "record", "replay"}))
        ->capture_default_str();
    cmd->add_option("--cache", cache, "replay cache file (JSON lines)");
    cmd->add_option("--model", model, "chat model id (default from LINTCC_MODEL_ID)");
    cmd->add_option("--base-url", base_url, "API base URL (default from LINTCC_BASE_URL)");
    cmd->add_option("--parallelism", parallelism, "max in-flight model requests")
        ->capture_default_str();
  }

  gateway::GatewayConfig to_config() const {
    gateway::GatewayConfig config = gateway::GatewayConfig::from_env();
    config.mode = gateway::mode_from_string(mode);
    config.cache_path = cache;
    config.parallelism = parallelism;
    if (!model.empty()) config.model_id = model;
    if (!base_url.empty()) config.base_url = base_url;
    return config;
  }
};

std::string emitted_file_name(const std::string& standard_id, const std::string& target) {
  return target == "checkstyle" ? standard_id + ".checkstyle.xml"
                                : standard_id + ".eslintrc.json";
}

int cmd_ingest(const std::string& standards_path, const std::string& docs_path,
               const std::string& benchmark_path) {
  if (standards_path.empty() && docs_path.empty() && benchmark_path.empty()) {
    std::cerr << "ingest: pass at least one of --standards, --docs, --benchmark\n";
    return kInputError;
  }
  if (!standards_path.empty()) {
    auto standards = corpus::load_coding_standards(standards_path);
    std::cout << standards_path << ": " << standards.size() << " coding standards\n";
  }
  if (!docs_path.empty()) {
    auto docs = corpus::load_linter_docs(docs_path);
    std::size_t options = 0;
    for (const auto& doc : docs) options += doc.options.size();
    std::cout << docs_path << ": " << docs.size() << " configurations, " << options
              << " options (" << (docs.empty() ? "?" : docs.front().linter.name)
              << ")\n";
  }
  if (!benchmark_path.empty()) {
    auto entries = eval::load_benchmark(benchmark_path);
    eval::BenchmarkStats stats = eval::benchmark_stats(entries);
    std::cout << benchmark_path << ": " << stats.total << " standards ("
              << stats.no_config << " no-config, " << stats.has_config
              << " with-config: " << stats.name_only << " name-only, "
              << stats.with_options << " with options, " << stats.multi_config
              << " multi-config)\n";
  }
  return kOk;
}

int cmd_build_instructions(const GatewayFlags& gw_flags, const std::string& linter,
                           const std::string& docs_path, const std::string& out_path) {
  auto docs = corpus::load_linter_docs(docs_path);
  if (!docs.empty() && !linter.empty() && docs.front().linter.name != linter) {
    std::cerr << "docs file is for linter '" << docs.front().linter.name
              << "', not '" << linter << "'\n";
    return kInputError;
  }
  gateway::LlmGateway gw(gw_flags.to_config());
  instructions::InstructionBuilder builder(gw);
  instructions::BuildReport report;
  instructions::InstructionSet iset = builder.build_instruction_set(docs, &report);
  instructions::save_instruction_set(out_path, iset);

  for (const std::string& warning : report.warnings)
    std::cerr << "warning: " << warning << "\n";
  std::cout << out_path << ": " << iset.order.size() << "/" << docs.size()
            << " configurations built\n";
  if (!report.failures.empty()) {
    std::cerr << report.failures.size() << " configuration(s) failed:\n";
    for (const auto& [name, reason] : report.failures)
      std::cerr << "  " << name << ": " << reason << "\n";
    return kPartialFailure;
  }
  return kOk;
}

int cmd_compile(const GatewayFlags& gw_flags, const std::string& standards_path,
                const std::string& instructions_path,
                const std::vector<std::string>& targets, const std::string& out_dir,
                const pipeline::CompileFlags& flags) {
  auto standards = corpus::load_coding_standards(standards_path);
  auto iset = instructions::load_instruction_set(instructions_path);
  std::filesystem::create_directories(out_dir);

  gateway::LlmGateway gw(gw_flags.to_config());
  pipeline::Compiler compiler(gw, iset);

  std::vector<std::optional<pipeline::CompilationResult>> results(standards.size());
  std::vector<std::string> failures(standards.size());
  detail::parallel_for(standards.size(), gw_flags.parallelism, [&](std::size_t i) {
    try {
      results[i] = compiler.compile(standards[i], targets, flags);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });

  std::vector<eval::StandardPrediction> predictions;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < standards.size(); ++i) {
    const std::string& id = standards[i].id;
    if (!results[i]) {
      ++failed;
      std::cerr << "error: " << id << ": " << failures[i] << "\n";
      continue;
    }
    const pipeline::CompilationResult& result = *results[i];
    pipeline::save_result(out_dir + "/" + id + ".result.json", result);
    for (const auto& [target, text] : result.emitted) {
      std::ofstream out(out_dir + "/" + emitted_file_name(id, target));
      out << text;
    }
    eval::StandardPrediction prediction;
    prediction.standard_id = id;
    for (const pipeline::AlignedConfiguration& aligned : result.aligned) {
      if (!aligned.accepted) continue;
      eval::GoldConfiguration config;
      config.config_name = aligned.candidate.config_name;
      for (const pipeline::Assignment& a : aligned.candidate.assignments)
        config.assignments.emplace_back(a.option_name, a.option_value);
      prediction.configs.push_back(std::move(config));
    }
    predictions.push_back(std::move(prediction));
  }

  // Merged project-wide configuration per target, in standard order.
  std::vector<pipeline::AlignedConfiguration> merged;
  for (const auto& result : results) {
    if (!result) continue;
    for (const pipeline::AlignedConfiguration& aligned : result->aligned)
      if (aligned.accepted) merged.push_back(aligned);
  }
  for (const std::string& target : targets) {
    emitters::EmittedConfig emitted = emitters::render(
        emitters::target_from_tag(target), merged, emitters::option_types_from(iset));
    std::ofstream out(out_dir + "/" + emitted_file_name("merged", target));
    out << emitted.text;
  }

  manifest::RunManifest run_manifest = manifest::make_manifest(
      gw_flags.to_config(), flags.to_strings(), instructions::instruction_set_hash(iset));
  eval::save_predictions(out_dir + "/predictions.json", iset.linter.name, "lintcc",
                         run_manifest, predictions);

  std::cout << out_dir << ": " << predictions.size() << "/" << standards.size()
            << " standards compiled\n";
  return failed == 0 ? kOk : kPartialFailure;
}

int cmd_evaluate(const std::string& benchmark_path,
                 const std::vector<std::string>& prediction_paths,
                 const std::string& report_path) {
  auto benchmark = eval::load_benchmark(benchmark_path);
  std::vector<eval::NamedRun> runs;
  for (const std::string& path : prediction_paths) {
    eval::PredictionsFile file = eval::load_predictions(path);
    runs.push_back({file.label, file.predictions});
  }
  eval::EvalReport report = eval::evaluate_run(benchmark, runs);

  for (const auto& [label, metrics] : report.runs)
    for (const std::string& id : metrics.missing_predictions)
      std::cerr << "note: run '" << label << "' has no prediction for '" << id
                << "' (counted as empty)\n";

  std::cout << eval::render_text_table(report);
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw IoError("cannot write " + report_path);
    out << eval::report_to_json(report).dump(2) << '\n';
    std::cout << "report written to " << report_path << "\n";
  }
  return kOk;
}

int cmd_baseline(const GatewayFlags& gw_flags, const std::string& kind_tag,
                 const std::string& docs_path, const std::string& standards_path,
                 const std::string& out_path, int top_k, int token_limit) {
  eval::BaselineKind kind = eval::baseline_from_tag(kind_tag);
  auto docs = corpus::load_linter_docs(docs_path);
  auto standards = corpus::load_coding_standards(standards_path);

  gateway::LlmGateway gw(gw_flags.to_config());
  eval::BaselineRunner runner(gw, docs);
  if (token_limit > 0) runner.token_limit = token_limit;

  std::vector<eval::StandardPrediction> predictions(standards.size());
  std::vector<std::string> failures(standards.size());
  detail::parallel_for(standards.size(), gw_flags.parallelism, [&](std::size_t i) {
    try {
      predictions[i] = runner.run(kind, standards[i], top_k);
    } catch (const std::exception& e) {
      failures[i] = e.what();
      predictions[i].standard_id = standards[i].id;
      predictions[i].inapplicable = true;
    }
  });

  std::size_t failed = 0;
  std::size_t inapplicable = 0;
  for (std::size_t i = 0; i < standards.size(); ++i) {
    if (!failures[i].empty()) {
      ++failed;
      std::cerr << "error: " << standards[i].id << ": " << failures[i] << "\n";
    } else if (predictions[i].inapplicable) {
      ++inapplicable;
    }
  }

  manifest::RunManifest run_manifest = manifest::make_manifest(gw_flags.to_config());
  std::string linter = docs.empty() ? "" : docs.front().linter.name;
  eval::save_predictions(out_path, linter, "baseline-" + kind_tag, run_manifest,
                         predictions);
  std::cout << out_path << ": " << predictions.size() << " predictions ("
            << inapplicable << " inapplicable)\n";
  return failed == 0 ? kOk : kPartialFailure;
}

int cmd_cache(const std::string& cache_path, bool verify) {
  std::ifstream in(cache_path);
  if (!in) throw IoError("cannot open " + cache_path);
  std::size_t entries = 0;
  std::size_t bad = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++entries;
    if (!verify) continue;
    auto entry = nlohmann::json::parse(line);
    std::string key = entry.at("key").get<std::string>();
    std::string digest = entry.at("request_digest").get<std::string>();
    if (gateway::sha256_hex(digest) != key) {
      ++bad;
      std::cerr << "cache entry " << entries << ": key does not match its request\n";
    }
  }
  std::cout << cache_path << ": " << entries << " entries";
  if (verify) std::cout << ", " << bad << " integrity failures";
  std::cout << "\n";
  return verify && bad > 0 ? kInputError : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lintcc: compiles natural-language coding standards into linter "
               "configurations through a rule DSL"};
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "validate corpus, docs and benchmark files");
  std::string ingest_standards, ingest_docs, ingest_benchmark;
  ingest->add_option("--standards", ingest_standards, "coding standards JSON");
  ingest->add_option("--docs", ingest_docs, "linter docs JSON");
  ingest->add_option("--benchmark", ingest_benchmark, "gold benchmark JSON");

  // build-instructions
  auto* build = app.add_subcommand("build-instructions",
                                   "compile linter docs into a DSL instruction set");
  GatewayFlags build_gw;
  std::string build_linter, build_docs, build_out;
  build->add_option("--linter", build_linter, "checkstyle or eslint");
  build->add_option("--docs", build_docs, "linter docs JSON")->required();
  build->add_option("--out", build_out, "instruction set output file")->required();
  build_gw.attach(build);

  // compile
  auto* compile = app.add_subcommand("compile",
                                     "compile coding standards into configurations");
  GatewayFlags compile_gw;
  std::string compile_standards, compile_instructions, compile_out_dir;
  std::vector<std::string> compile_targets;
  pipeline::CompileFlags compile_flags;
  compile->add_option("--standards", compile_standards, "coding standards JSON")
      ->required();
  compile->add_option("--instructions", compile_instructions, "instruction set file")
      ->required();
  compile->add_option("--target", compile_targets, "checkstyle and/or eslint")
      ->required();
  compile->add_option("--out-dir", compile_out_dir, "output directory")->required();
  compile->add_flag("--no-dsl", compile_flags.no_dsl,
                    "ablation: skip DSL parsing, forward raw text");
  compile->add_flag("--no-selector", compile_flags.no_selector,
                    "ablation: skip name selection, offer all configurations");
  compile->add_flag("--no-checker", compile_flags.no_checker,
                    "ablation: accept all candidates unchecked");
  compile->add_flag("--llm-render", compile_flags.llm_render,
                    "render configurations through the model with fallback");
  compile_gw.attach(compile);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "score predictions against a benchmark");
  std::string eval_benchmark, eval_report;
  std::vector<std::string> eval_predictions;
  evaluate->add_option("--benchmark", eval_benchmark, "gold benchmark JSON")->required();
  evaluate->add_option("--predictions", eval_predictions, "prediction file(s)")
      ->required();
  evaluate->add_option("--report", eval_report, "report JSON output path");

  // baseline
  auto* baseline = app.add_subcommand("baseline", "run one of the six baselines");
  GatewayFlags baseline_gw;
  std::string baseline_kind, baseline_docs, baseline_standards, baseline_out;
  int baseline_k = 10;
  int baseline_token_limit = 0;
  baseline->add_option("--kind", baseline_kind,
                       "closed_book, name, name_desc, name_desc_opts, rag_name_desc, "
                       "rag_name_desc_opts")
      ->required();
  baseline->add_option("--docs", baseline_docs, "linter docs JSON")->required();
  baseline->add_option("--standards", baseline_standards, "coding standards JSON")
      ->required();
  baseline->add_option("--out", baseline_out, "predictions output file")->required();
  baseline->add_option("--k", baseline_k, "top-k retrieved entries for RAG kinds")
      ->capture_default_str();
  baseline->add_option("--token-limit", baseline_token_limit,
                       "prompt token budget (0 keeps the default)");
  baseline_gw.attach(baseline);

  // cache
  auto* cache = app.add_subcommand("cache", "inspect a replay cache file");
  std::string cache_path;
  bool cache_verify = false;
  cache->add_option("file", cache_path, "cache file (JSON lines)")->required();
  cache->add_flag("--verify", cache_verify, "check entry keys against request digests");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) return cmd_ingest(ingest_standards, ingest_docs, ingest_benchmark);
    if (*build) return cmd_build_instructions(build_gw, build_linter, build_docs, build_out);
    if (*compile)
      return cmd_compile(compile_gw, compile_standards, compile_instructions,
                         compile_targets, compile_out_dir, compile_flags);
    if (*evaluate) return cmd_evaluate(eval_benchmark, eval_predictions, eval_report);
    if (*baseline)
      return cmd_baseline(baseline_gw, baseline_kind, baseline_docs, baseline_standards,
                          baseline_out, baseline_k, baseline_token_limit);
    if (*cache) return cmd_cache(cache_path, cache_verify);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
