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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "support/scripted_model.hpp"
#include "support/test_http.hpp"

namespace {

namespace fs = std::filesystem;
const std::string kBin = LINTCC_BIN;
const std::string kData = LINTCC_DATA_DIR;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  auto out_path = fs::temp_directory_path() / "lintcc_cli_out.txt";
  std::string command = kBin + " " + args + " > " + out_path.string() + " 2>&1";
  int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_path);
  result.output.assign(std::istreambuf_iterator<char>(in), {});
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string replay_flags() {
  return " --mode replay --model scripted-model --cache " + kData +
         "/replay/fixture_cache.jsonl";
}

}  // namespace

TEST_CASE("ingest validates files and fails on bad paths") {
  CHECK(run_cli("ingest --standards " + kData + "/corpora/java_standards.json")
            .exit_code == 0);
  CHECK(run_cli("ingest --standards /does/not/exist.json").exit_code == 1);
  CHECK(run_cli("ingest").exit_code == 1);
}

TEST_CASE("build-instructions: replay determinism and error codes") {
  fs::path dir = fresh_dir("cli_build");
  std::string common = "build-instructions --docs " + kData +
                       "/fixtures/fixture_docs.json" + replay_flags();

  auto first = run_cli(common + " --out " + (dir / "a.json").string());
  CHECK(first.exit_code == 0);
  auto second = run_cli(common + " --out " + (dir / "b.json").string());
  CHECK(second.exit_code == 0);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  CHECK_FALSE(slurp(dir / "a.json").empty());

  CHECK(run_cli("build-instructions --docs /missing.json --out " +
                (dir / "x.json").string())
            .exit_code == 1);

  // A config the replay cache knows nothing about fails and yields the
  // partial-failure exit code, while the file is still written.
  fs::path broken_docs = dir / "broken_docs.json";
  {
    auto docs = nlohmann::ordered_json::parse(
        slurp(kData + "/fixtures/fixture_docs.json"));
    docs["configs"].push_back(
        {{"config_name", "UnknownToTheCache"},
         {"description_sentences", {"Checks something never recorded."}},
         {"options", nlohmann::ordered_json::array()}});
    std::ofstream(broken_docs) << docs.dump(2);
  }
  auto partial = run_cli("build-instructions --docs " + broken_docs.string() +
                         replay_flags() + " --out " + (dir / "partial.json").string());
  CHECK(partial.exit_code == 2);
  CHECK(partial.output.find("UnknownToTheCache") != std::string::npos);
  CHECK(fs::exists(dir / "partial.json"));
}

TEST_CASE("compile: result files, ablation flags, target validation") {
  fs::path dir = fresh_dir("cli_compile");
  std::string common = "compile --standards " + kData +
                       "/fixtures/fixture_standards.json --instructions " + kData +
                       "/fixtures/fixture_instructions.json --target checkstyle" +
                       replay_flags();

  auto result = run_cli(common + " --out-dir " + dir.string());
  CHECK(result.exit_code == 0);
  // One result artifact and one emitted config per standard, plus the merged
  // document and the predictions file.
  int result_files = 0, xml_files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    if (name.ends_with(".result.json")) ++result_files;
    if (name.ends_with(".checkstyle.xml")) ++xml_files;
  }
  CHECK(result_files == 10);
  CHECK(xml_files == 11);  // 10 standards + merged
  CHECK(fs::exists(dir / "predictions.json"));

  std::string merged = slurp(dir / "merged.checkstyle.xml");
  CHECK(merged.find("PackageDeclaration") != std::string::npos);

  fs::path ablation_dir = fresh_dir("cli_compile_nc");
  auto no_checker =
      run_cli(common + " --no-checker --out-dir " + ablation_dir.string());
  CHECK(no_checker.exit_code == 0);
  auto doc = nlohmann::ordered_json::parse(
      slurp(ablation_dir / "f01-package-statement.result.json"));
  for (const auto& aligned : doc["stage4"]["aligned"]) {
    CHECK(aligned["accepted"] == true);
    CHECK(aligned["verdicts"]["semantics"] == "skipped");
  }

  CHECK(run_cli(common + " --out-dir " + dir.string() + " --target nonsense")
            .exit_code != 0);
  auto eslint_on_checkstyle =
      run_cli("compile --standards " + kData +
              "/fixtures/fixture_standards.json --instructions " + kData +
              "/fixtures/fixture_instructions.json --target eslint" + replay_flags() +
              " --out-dir " + dir.string());
  CHECK(eslint_on_checkstyle.exit_code == 2);  // every standard fails to compile
}

TEST_CASE("evaluate: self-evaluation scores 1.0 and deltas appear") {
  fs::path dir = fresh_dir("cli_eval");
  // Build a predictions file straight from the gold benchmark.
  auto gold = nlohmann::ordered_json::parse(
      slurp(kData + "/benchmarks/java_checkstyle_gold.json"));
  nlohmann::ordered_json predictions = nlohmann::ordered_json::array();
  for (const auto& entry : gold["entries"]) {
    predictions.push_back({{"standard_id", entry["standard_id"]},
                           {"inapplicable", false},
                           {"configs", entry["gold_configs"]}});
  }
  fs::path selfpred = dir / "self.json";
  std::ofstream(selfpred) << nlohmann::ordered_json{{"version", 1},
                                                    {"linter", "checkstyle"},
                                                    {"label", "gold-vs-gold"},
                                                    {"predictions", predictions}}
                                 .dump(2);

  auto result = run_cli("evaluate --benchmark " + kData +
                        "/benchmarks/java_checkstyle_gold.json --predictions " +
                        selfpred.string() + " --report " + (dir / "report.json").string());
  CHECK(result.exit_code == 0);
  auto report = nlohmann::ordered_json::parse(slurp(dir / "report.json"));
  for (const char* level : {"config_name", "option_name", "option_value"}) {
    CHECK(report["runs"][0]["levels"][level]["acc"] == 1.0);
    CHECK(report["runs"][0]["levels"][level]["f1"] == 1.0);
  }

  // Two prediction sets produce a change row.
  fs::path empty_preds = dir / "empty.json";
  std::ofstream(empty_preds) << R"({"version":1,"linter":"checkstyle",
    "label":"empty","predictions":[]})";
  auto two = run_cli("evaluate --benchmark " + kData +
                     "/benchmarks/java_checkstyle_gold.json --predictions " +
                     empty_preds.string() + " --predictions " + selfpred.string());
  CHECK(two.exit_code == 0);
  CHECK(two.output.find("change vs best") != std::string::npos);

  // Id mismatches are diagnosed but do not fail the run.
  fs::path mismatch = dir / "mismatch.json";
  std::ofstream(mismatch) << R"({"version":1,"linter":"checkstyle","label":"m",
    "predictions":[{"standard_id":"not-a-standard","inapplicable":false,"configs":[]}]})";
  auto diag = run_cli("evaluate --benchmark " + kData +
                      "/benchmarks/java_checkstyle_gold.json --predictions " +
                      mismatch.string());
  CHECK(diag.exit_code == 0);
  CHECK(diag.output.find("no prediction") != std::string::npos);
}

TEST_CASE("baseline: replay run writes predictions; bad kind exits 1") {
  fs::path dir = fresh_dir("cli_baseline");
  auto result = run_cli("baseline --kind closed_book --docs " + kData +
                        "/fixtures/fixture_docs.json --standards " + kData +
                        "/fixtures/fixture_standards.json" + replay_flags() + " --out " +
                        (dir / "preds.json").string());
  CHECK(result.exit_code == 0);
  auto doc = nlohmann::ordered_json::parse(slurp(dir / "preds.json"));
  CHECK(doc["predictions"].size() == 10);

  auto bad = run_cli("baseline --kind closed_books --docs x --standards y --out z");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("closed_book") != std::string::npos);  // kinds listed
}

TEST_CASE("baseline: rag retrieval against a live local endpoint") {
  lintcc::testing::LocalModelServer server([](const std::string& prompt) {
    return lintcc::testing::ScriptedModel::fixture().reply(prompt);
  });
  fs::path dir = fresh_dir("cli_rag");
  auto result = run_cli("baseline --kind rag_name_desc --k 3 --docs " + kData +
                        "/fixtures/fixture_docs.json --standards " + kData +
                        "/fixtures/fixture_standards.json --mode live --base-url " +
                        server.base_url() + " --out " + (dir / "preds.json").string());
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(dir / "preds.json"));
}

TEST_CASE("cache: stats and integrity verification") {
  auto result =
      run_cli("cache " + kData + "/replay/fixture_cache.jsonl --verify");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("0 integrity failures") != std::string::npos);
  CHECK(run_cli("cache /missing.jsonl").exit_code == 1);
}
