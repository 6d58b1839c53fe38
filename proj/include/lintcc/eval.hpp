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

#ifndef LINTCC_EVAL_HPP_
#define LINTCC_EVAL_HPP_

#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lintcc/corpus.hpp"
#include "lintcc/gateway.hpp"
#include "lintcc/manifest.hpp"

// Gold benchmarks, prediction matching at three granularities, pooled
// metrics and the six baseline generation strategies.

namespace lintcc::eval {

struct GoldConfiguration {
  std::string config_name;
  // Option names are unique within a configuration.
  std::vector<std::pair<std::string, std::string>> assignments;

  bool operator==(const GoldConfiguration&) const = default;
};

struct BenchmarkEntry {
  std::string standard_id;
  // Empty means the standard has no enforceable configuration.
  std::vector<GoldConfiguration> gold_configs;

  bool operator==(const BenchmarkEntry&) const = default;
};

std::vector<BenchmarkEntry> load_benchmark(const std::string& path);

struct BenchmarkStats {
  std::size_t total = 0;
  std::size_t no_config = 0;
  std::size_t has_config = 0;
  std::size_t name_only = 0;      // every gold config is option-less
  std::size_t with_options = 0;   // at least one option somewhere
  std::size_t multi_config = 0;   // two or more gold configs
};

BenchmarkStats benchmark_stats(const std::vector<BenchmarkEntry>& entries);

enum class Granularity { kConfigName, kOptionName, kOptionValue };

inline constexpr std::array<Granularity, 3> kGranularities = {
    Granularity::kConfigName, Granularity::kOptionName, Granularity::kOptionValue};

std::string to_tag(Granularity granularity);

// Canonical match units for one standard's configurations. Names are
// case-folded; values are trimmed and comma-separated token lists compare as
// order-insensitive sets. A bare config-name unit appears at the option
// levels only for option-less configurations.
std::set<std::string> unit_set(const std::vector<GoldConfiguration>& configs,
                               Granularity granularity);

struct MatchCounts {
  Granularity granularity = Granularity::kConfigName;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

MatchCounts match(const std::set<std::string>& gold_units,
                  const std::set<std::string>& predicted_units,
                  Granularity granularity);

struct GranularityMetrics {
  std::size_t tp = 0, fp = 0, fn = 0;
  std::size_t correct_standards = 0;
  double acc = 0, p = 0, r = 0, f1 = 0;
};

struct MetricsReport {
  std::size_t standard_count = 0;
  std::map<Granularity, GranularityMetrics> levels;
  // standard_id -> correctness per granularity (fp == fn == 0).
  std::map<std::string, std::map<Granularity, bool>> per_standard;
  std::vector<std::string> missing_predictions;
  std::size_t inapplicable = 0;
};

struct StandardPrediction {
  std::string standard_id;
  std::vector<GoldConfiguration> configs;
  bool inapplicable = false;  // token-limit marker, excluded from metrics
};

// Micro-averaged P/R/F1 pooled over all units, Acc per standard. Standards
// without a prediction count as empty predictions and are listed.
MetricsReport compute_metrics(const std::vector<BenchmarkEntry>& benchmark,
                              const std::vector<StandardPrediction>& predictions);

struct NamedRun {
  std::string label;
  std::vector<StandardPrediction> predictions;
};

struct EvalReport {
  BenchmarkStats stats;
  std::vector<std::pair<std::string, MetricsReport>> runs;
  // Percent change of the last run against the best earlier run, per
  // granularity and metric; present when two or more runs are supplied.
  std::map<Granularity, std::map<std::string, double>> change_vs_best;
};

EvalReport evaluate_run(const std::vector<BenchmarkEntry>& benchmark,
                        const std::vector<NamedRun>& runs);

nlohmann::ordered_json report_to_json(const EvalReport& report);
std::string render_text_table(const EvalReport& report);

// Predictions file shared by the pipeline and the baselines.
void save_predictions(const std::string& path, const std::string& linter,
                      const std::string& label, const manifest::RunManifest& manifest,
                      const std::vector<StandardPrediction>& predictions);
struct PredictionsFile {
  std::string linter;
  std::string label;
  std::vector<StandardPrediction> predictions;
};
PredictionsFile load_predictions(const std::string& path);

// -- Baselines ---------------------------------------------------------------

enum class BaselineKind {
  kClosedBook,
  kName,
  kNameDesc,
  kNameDescOpts,
  kRagNameDesc,
  kRagNameDescOpts,
};

BaselineKind baseline_from_tag(const std::string& tag);
std::string to_tag(BaselineKind kind);
bool is_rag(BaselineKind kind);

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

// Single-prompt generation with tool information assembled per baseline
// kind. Responses are parsed leniently and configuration names are kept
// unfiltered, hallucinations included. Prompts whose estimated token count
// exceeds the budget come back marked inapplicable without a model call.
class BaselineRunner {
 public:
  BaselineRunner(gateway::LlmGateway& gw, std::vector<corpus::LinterConfigDoc> docs);

  StandardPrediction run(BaselineKind kind, const corpus::CodingStandardDoc& standard,
                         int top_k = 10);

  // Indices of the top-k docs by cosine similarity to the standard's text;
  // ties break toward the lower index.
  std::vector<std::size_t> retrieve_top_k(const corpus::CodingStandardDoc& standard,
                                          int top_k);

  // Estimated tokens (4 chars per token) above which a prompt is marked
  // inapplicable.
  int token_limit = 24576;

 private:
  std::string tool_information(BaselineKind kind, const corpus::CodingStandardDoc& standard,
                               int top_k);
  std::string doc_text(std::size_t index, bool with_options) const;

  gateway::LlmGateway& gateway_;
  std::vector<corpus::LinterConfigDoc> docs_;
};

// `use <name>` / `set <name>.<option> = <value>` lines; unparseable lines
// are ignored, names are preserved verbatim.
std::vector<GoldConfiguration> parse_prediction_lines(const std::string& response);

}  // namespace lintcc::eval

#endif  // LINTCC_EVAL_HPP_
