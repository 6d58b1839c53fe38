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

#include "lintcc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "lintcc/prompts.hpp"
#include "strutil.hpp"

namespace lintcc::eval {

namespace {

using nlohmann::ordered_json;
using strutil::join;
using strutil::lowercase;
using strutil::trim;

constexpr char kUnitSep = '\x1f';

std::string normalize_value(const std::string& value) {
  // Comma-separated token lists compare as order-insensitive sets.
  std::vector<std::string> parts = strutil::split_csv(value);
  std::sort(parts.begin(), parts.end());
  return join(parts, ",");
}

ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  ordered_json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON in ") + path + ": " + e.what(), "$");
  }
  return doc;
}

std::vector<GoldConfiguration> configs_from_json(const ordered_json& arr,
                                                 const char* field) {
  std::vector<GoldConfiguration> out;
  if (!arr.is_array()) throw SchemaError("expected array", field);
  for (const auto& entry : arr) {
    GoldConfiguration config;
    config.config_name = entry.at("config_name").get<std::string>();
    std::set<std::string> seen;
    if (entry.contains("assignments")) {
      for (const auto& a : entry["assignments"]) {
        std::string option = a.at("option_name").get<std::string>();
        if (!seen.insert(option).second)
          throw SchemaError("duplicate option '" + option + "' in config '" +
                                config.config_name + "'",
                            "assignments");
        config.assignments.emplace_back(option,
                                        a.at("option_value").get<std::string>());
      }
    }
    out.push_back(std::move(config));
  }
  return out;
}

ordered_json configs_to_json(const std::vector<GoldConfiguration>& configs) {
  ordered_json arr = ordered_json::array();
  for (const GoldConfiguration& config : configs) {
    ordered_json assignments = ordered_json::array();
    for (const auto& [option, value] : config.assignments)
      assignments.push_back(ordered_json{{"option_name", option},
                                         {"option_value", value}});
    arr.push_back(ordered_json{{"config_name", config.config_name},
                               {"assignments", assignments}});
  }
  return arr;
}

GranularityMetrics finalize(GranularityMetrics m, std::size_t standard_count) {
  m.acc = standard_count == 0
              ? 0.0
              : static_cast<double>(m.correct_standards) / standard_count;
  m.p = m.tp + m.fp == 0 ? 0.0 : static_cast<double>(m.tp) / (m.tp + m.fp);
  m.r = m.tp + m.fn == 0 ? 0.0 : static_cast<double>(m.tp) / (m.tp + m.fn);
  m.f1 = m.p + m.r == 0 ? 0.0 : 2.0 * m.p * m.r / (m.p + m.r);
  return m;
}

double metric_value(const GranularityMetrics& m, const std::string& name) {
  if (name == "acc") return m.acc;
  if (name == "p") return m.p;
  if (name == "r") return m.r;
  return m.f1;
}

}  // namespace

std::vector<BenchmarkEntry> load_benchmark(const std::string& path) {
  ordered_json doc = read_json_file(path);
  if (doc.value("version", 0) != 1) throw SchemaError("unsupported version", "version");
  std::vector<BenchmarkEntry> out;
  std::set<std::string> seen;
  for (const auto& entry : doc.at("entries")) {
    BenchmarkEntry bench;
    bench.standard_id = entry.at("standard_id").get<std::string>();
    if (!seen.insert(bench.standard_id).second)
      throw SchemaError("duplicate standard_id '" + bench.standard_id + "'",
                        "standard_id");
    bench.gold_configs = configs_from_json(entry.at("gold_configs"), "gold_configs");
    out.push_back(std::move(bench));
  }
  return out;
}

BenchmarkStats benchmark_stats(const std::vector<BenchmarkEntry>& entries) {
  BenchmarkStats stats;
  stats.total = entries.size();
  for (const BenchmarkEntry& entry : entries) {
    if (entry.gold_configs.empty()) {
      ++stats.no_config;
      continue;
    }
    ++stats.has_config;
    bool any_options = std::any_of(entry.gold_configs.begin(), entry.gold_configs.end(),
                                   [](const GoldConfiguration& c) {
                                     return !c.assignments.empty();
                                   });
    if (any_options) ++stats.with_options;
    else ++stats.name_only;
    if (entry.gold_configs.size() >= 2) ++stats.multi_config;
  }
  return stats;
}

std::string to_tag(Granularity granularity) {
  switch (granularity) {
    case Granularity::kConfigName: return "config_name";
    case Granularity::kOptionName: return "option_name";
    case Granularity::kOptionValue: return "option_value";
  }
  return "config_name";
}

std::set<std::string> unit_set(const std::vector<GoldConfiguration>& configs,
                               Granularity granularity) {
  std::set<std::string> units;
  for (const GoldConfiguration& config : configs) {
    std::string name = lowercase(trim(config.config_name));
    if (granularity == Granularity::kConfigName || config.assignments.empty()) {
      units.insert(name);
      continue;
    }
    for (const auto& [option, value] : config.assignments) {
      std::string unit = name + kUnitSep + lowercase(trim(option));
      if (granularity == Granularity::kOptionValue)
        unit += kUnitSep + normalize_value(value);
      units.insert(unit);
    }
  }
  return units;
}

MatchCounts match(const std::set<std::string>& gold_units,
                  const std::set<std::string>& predicted_units,
                  Granularity granularity) {
  MatchCounts counts;
  counts.granularity = granularity;
  for (const std::string& unit : predicted_units) {
    if (gold_units.count(unit)) ++counts.tp;
    else ++counts.fp;
  }
  counts.fn = gold_units.size() - counts.tp;
  return counts;
}

MetricsReport compute_metrics(const std::vector<BenchmarkEntry>& benchmark,
                              const std::vector<StandardPrediction>& predictions) {
  std::map<std::string, const StandardPrediction*> by_id;
  for (const StandardPrediction& p : predictions) by_id[p.standard_id] = &p;

  MetricsReport report;
  std::map<Granularity, GranularityMetrics> pooled;
  std::size_t evaluated = 0;

  for (const BenchmarkEntry& entry : benchmark) {
    auto it = by_id.find(entry.standard_id);
    const StandardPrediction* prediction = it == by_id.end() ? nullptr : it->second;
    if (prediction == nullptr)
      report.missing_predictions.push_back(entry.standard_id);
    if (prediction != nullptr && prediction->inapplicable) {
      ++report.inapplicable;
      continue;
    }
    ++evaluated;
    static const std::vector<GoldConfiguration> kEmpty;
    const std::vector<GoldConfiguration>& predicted =
        prediction == nullptr ? kEmpty : prediction->configs;

    for (Granularity g : kGranularities) {
      MatchCounts counts = match(unit_set(entry.gold_configs, g), unit_set(predicted, g), g);
      GranularityMetrics& m = pooled[g];
      m.tp += counts.tp;
      m.fp += counts.fp;
      m.fn += counts.fn;
      bool correct = counts.fp == 0 && counts.fn == 0;
      if (correct) ++m.correct_standards;
      report.per_standard[entry.standard_id][g] = correct;
    }
  }

  report.standard_count = evaluated;
  for (Granularity g : kGranularities)
    report.levels[g] = finalize(pooled[g], evaluated);
  return report;
}

EvalReport evaluate_run(const std::vector<BenchmarkEntry>& benchmark,
                        const std::vector<NamedRun>& runs) {
  EvalReport report;
  report.stats = benchmark_stats(benchmark);
  for (const NamedRun& run : runs)
    report.runs.emplace_back(run.label, compute_metrics(benchmark, run.predictions));

  if (report.runs.size() >= 2) {
    const MetricsReport& last = report.runs.back().second;
    for (Granularity g : kGranularities) {
      for (const std::string metric : {"acc", "p", "r", "f1"}) {
        double best = 0.0;
        for (std::size_t i = 0; i + 1 < report.runs.size(); ++i)
          best = std::max(best,
                          metric_value(report.runs[i].second.levels.at(g), metric));
        double ours = metric_value(last.levels.at(g), metric);
        report.change_vs_best[g][metric] =
            best == 0.0 ? (ours > 0 ? 100.0 : 0.0) : (ours - best) / best * 100.0;
      }
    }
  }
  return report;
}

nlohmann::ordered_json report_to_json(const EvalReport& report) {
  ordered_json stats{{"total", report.stats.total},
                     {"no_config", report.stats.no_config},
                     {"has_config", report.stats.has_config},
                     {"name_only", report.stats.name_only},
                     {"with_options", report.stats.with_options},
                     {"multi_config", report.stats.multi_config}};

  ordered_json runs = ordered_json::array();
  for (const auto& [label, metrics] : report.runs) {
    ordered_json levels = ordered_json::object();
    for (Granularity g : kGranularities) {
      const GranularityMetrics& m = metrics.levels.at(g);
      levels[to_tag(g)] = ordered_json{{"acc", m.acc}, {"p", m.p},   {"r", m.r},
                                       {"f1", m.f1},   {"tp", m.tp}, {"fp", m.fp},
                                       {"fn", m.fn}};
    }
    runs.push_back(ordered_json{{"label", label},
                                {"standards", metrics.standard_count},
                                {"inapplicable", metrics.inapplicable},
                                {"missing_predictions", metrics.missing_predictions},
                                {"levels", levels}});
  }

  ordered_json out{{"version", 1}, {"benchmark", stats}, {"runs", runs}};
  if (!report.change_vs_best.empty()) {
    ordered_json change = ordered_json::object();
    for (const auto& [g, metrics] : report.change_vs_best)
      change[to_tag(g)] = metrics;
    out["change_vs_best"] = change;
  }
  return out;
}

std::string render_text_table(const EvalReport& report) {
  std::ostringstream out;
  out << "benchmark: " << report.stats.total << " standards ("
      << report.stats.no_config << " without configuration, "
      << report.stats.has_config << " with: " << report.stats.name_only
      << " name-only, " << report.stats.with_options << " with options, "
      << report.stats.multi_config << " multi-config)\n\n";

  auto row = [&](const std::string& label, const MetricsReport& metrics) {
    out << std::left << std::setw(22) << label;
    for (Granularity g : kGranularities) {
      const GranularityMetrics& m = metrics.levels.at(g);
      if (metrics.standard_count == 0 && metrics.inapplicable > 0) {
        out << "     -     -     -     -";
        continue;
      }
      out << std::right << std::fixed << std::setprecision(1);
      out << std::setw(6) << m.acc * 100 << std::setw(6) << m.p * 100
          << std::setw(6) << m.r * 100 << std::setw(6) << m.f1 * 100;
    }
    out << "\n";
  };

  out << std::left << std::setw(22) << "run";
  for (Granularity g : kGranularities) {
    (void)g;
    out << std::right << std::setw(6) << "Acc" << std::setw(6) << "P"
        << std::setw(6) << "R" << std::setw(6) << "F1";
  }
  out << "\n" << std::string(22 + 3 * 24, '-') << "\n";
  for (const auto& [label, metrics] : report.runs) row(label, metrics);

  if (!report.change_vs_best.empty()) {
    out << std::left << std::setw(22) << "change vs best (%)";
    out << std::right << std::fixed << std::setprecision(1);
    for (Granularity g : kGranularities) {
      const auto& change = report.change_vs_best.at(g);
      out << std::setw(6) << change.at("acc") << std::setw(6) << change.at("p")
          << std::setw(6) << change.at("r") << std::setw(6) << change.at("f1");
    }
    out << "\n";
  }
  return out.str();
}

void save_predictions(const std::string& path, const std::string& linter,
                      const std::string& label, const manifest::RunManifest& manifest,
                      const std::vector<StandardPrediction>& predictions) {
  ordered_json arr = ordered_json::array();
  for (const StandardPrediction& p : predictions) {
    ordered_json entry{{"standard_id", p.standard_id},
                       {"inapplicable", p.inapplicable},
                       {"configs", configs_to_json(p.configs)}};
    arr.push_back(std::move(entry));
  }
  ordered_json doc{{"version", 1},
                   {"linter", linter},
                   {"label", label},
                   {"manifest", manifest.to_json()},
                   {"predictions", arr}};
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << doc.dump(2) << '\n';
}

PredictionsFile load_predictions(const std::string& path) {
  ordered_json doc = read_json_file(path);
  PredictionsFile out;
  out.linter = doc.value("linter", "");
  out.label = doc.value("label", path);
  for (const auto& entry : doc.at("predictions")) {
    StandardPrediction p;
    p.standard_id = entry.at("standard_id").get<std::string>();
    p.inapplicable = entry.value("inapplicable", false);
    p.configs = configs_from_json(entry.at("configs"), "configs");
    out.predictions.push_back(std::move(p));
  }
  return out;
}

// -- Baselines ---------------------------------------------------------------

BaselineKind baseline_from_tag(const std::string& tag) {
  if (tag == "closed_book") return BaselineKind::kClosedBook;
  if (tag == "name") return BaselineKind::kName;
  if (tag == "name_desc") return BaselineKind::kNameDesc;
  if (tag == "name_desc_opts") return BaselineKind::kNameDescOpts;
  if (tag == "rag_name_desc") return BaselineKind::kRagNameDesc;
  if (tag == "rag_name_desc_opts") return BaselineKind::kRagNameDescOpts;
  throw Error("unknown baseline kind '" + tag +
              "' (expected closed_book, name, name_desc, name_desc_opts, "
              "rag_name_desc or rag_name_desc_opts)");
}

std::string to_tag(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kClosedBook: return "closed_book";
    case BaselineKind::kName: return "name";
    case BaselineKind::kNameDesc: return "name_desc";
    case BaselineKind::kNameDescOpts: return "name_desc_opts";
    case BaselineKind::kRagNameDesc: return "rag_name_desc";
    case BaselineKind::kRagNameDescOpts: return "rag_name_desc_opts";
  }
  return "closed_book";
}

bool is_rag(BaselineKind kind) {
  return kind == BaselineKind::kRagNameDesc || kind == BaselineKind::kRagNameDescOpts;
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty())
    throw Error("cosine similarity needs vectors of equal nonzero dimension");
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<GoldConfiguration> parse_prediction_lines(const std::string& response) {
  std::vector<GoldConfiguration> configs;
  auto config_for = [&](const std::string& name) -> GoldConfiguration& {
    for (GoldConfiguration& c : configs)
      if (c.config_name == name) return c;
    configs.push_back(GoldConfiguration{name, {}});
    return configs.back();
  };

  std::vector<std::string> lines = strutil::nonblank_lines(response);
  if (strutil::is_none(lines)) return configs;
  for (std::string line : lines) {
    // A trailing ` for rule <k>` is tolerated and ignored.
    std::size_t suffix = line.rfind(" for rule ");
    if (suffix != std::string::npos) line = trim(line.substr(0, suffix));
    if (line.rfind("use ", 0) == 0) {
      std::string name = trim(line.substr(4));
      if (!name.empty()) config_for(name);
      continue;
    }
    if (line.rfind("set ", 0) != 0) continue;
    std::string rest = trim(line.substr(4));
    std::size_t eq = rest.find('=');
    if (eq == std::string::npos) continue;
    std::string target = trim(rest.substr(0, eq));
    std::string value = trim(rest.substr(eq + 1));
    std::size_t dot = target.find('.');
    if (dot == std::string::npos || value.empty()) continue;
    std::string name = trim(target.substr(0, dot));
    std::string option = trim(target.substr(dot + 1));
    if (name.empty() || option.empty()) continue;
    GoldConfiguration& config = config_for(name);
    bool exists = std::any_of(config.assignments.begin(), config.assignments.end(),
                              [&](const auto& a) { return a.first == option; });
    if (!exists) config.assignments.emplace_back(option, value);
  }
  return configs;
}

BaselineRunner::BaselineRunner(gateway::LlmGateway& gw,
                               std::vector<corpus::LinterConfigDoc> docs)
    : gateway_(gw), docs_(std::move(docs)) {}

std::string BaselineRunner::doc_text(std::size_t index, bool with_options) const {
  const corpus::LinterConfigDoc& doc = docs_[index];
  std::string out = doc.config_name + ": " + join(doc.description_sentences, " ");
  if (with_options) {
    for (const corpus::OptionDoc& opt : doc.options) {
      out += "\n  option " + opt.option_name + " (" + opt.data_type_name;
      if (opt.value_range.kind == corpus::OptionValueRange::Kind::kFinite)
        out += ": " + join(opt.value_range.literals, ", ");
      out += "): " + opt.description;
    }
  }
  return out;
}

std::vector<std::size_t> BaselineRunner::retrieve_top_k(
    const corpus::CodingStandardDoc& standard, int top_k) {
  std::string query = standard.title + "\n" + join(standard.sentences, "\n");
  std::vector<double> query_vec = gateway_.embed(query);

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(docs_.size());
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    std::vector<double> doc_vec = gateway_.embed(doc_text(i, false));
    scored.emplace_back(cosine_similarity(query_vec, doc_vec), i);
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    return a.first > b.first;
  });
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < scored.size() && out.size() < static_cast<std::size_t>(top_k);
       ++i)
    out.push_back(scored[i].second);
  return out;
}

std::string BaselineRunner::tool_information(BaselineKind kind,
                                             const corpus::CodingStandardDoc& standard,
                                             int top_k) {
  switch (kind) {
    case BaselineKind::kClosedBook:
      return "";
    case BaselineKind::kName: {
      std::vector<std::string> names;
      names.reserve(docs_.size());
      for (const corpus::LinterConfigDoc& doc : docs_) names.push_back(doc.config_name);
      return "Available configuration names:\n" + join(names, "\n");
    }
    case BaselineKind::kNameDesc:
    case BaselineKind::kNameDescOpts: {
      std::string out = "Available configurations:\n";
      for (std::size_t i = 0; i < docs_.size(); ++i)
        out += doc_text(i, kind == BaselineKind::kNameDescOpts) + "\n";
      return out;
    }
    case BaselineKind::kRagNameDesc:
    case BaselineKind::kRagNameDescOpts: {
      std::string out = "Most relevant configurations:\n";
      for (std::size_t index : retrieve_top_k(standard, top_k))
        out += doc_text(index, kind == BaselineKind::kRagNameDescOpts) + "\n";
      return out;
    }
  }
  return "";
}

StandardPrediction BaselineRunner::run(BaselineKind kind,
                                       const corpus::CodingStandardDoc& standard,
                                       int top_k) {
  if (docs_.empty()) throw Error("baseline runner needs linter docs");
  StandardPrediction prediction;
  prediction.standard_id = standard.id;

  std::string prompt_text = gateway::render(
      prompts::prompt("baseline_generate"),
      {{"linter", docs_.front().linter.name},
       {"tool_information", tool_information(kind, standard, top_k)},
       {"standard_title", standard.title},
       {"standard_text", join(standard.sentences, "\n")}});

  if (static_cast<int>(prompt_text.size() / 4) > token_limit) {
    prediction.inapplicable = true;  // the paper reports these cells as `-`
    return prediction;
  }

  std::string response = gateway_.complete(gateway::CompletionRequest::user_message(
      gateway_.config().model_id, prompt_text));
  prediction.configs = parse_prediction_lines(response);
  return prediction;
}

}  // namespace lintcc::eval
