// Copyright 2026 The Longtail Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "longtail/harness.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "longtail/error.hpp"

namespace longtail {

namespace {

template <typename F>
auto InStage(const std::string& stage, F&& fn) {
  try {
    return fn();
  } catch (Error& e) {
    if (e.stage().empty()) e.set_stage(stage);
    throw;
  }
}

double SecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string ReadAll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

PrepSummary PrepareFiltered(const ExperimentConfig& cfg) {
  if (cfg.input.empty()) throw ConfigError("no input dataset given");
  PrepSummary out;
  ParseResult parsed = InStage("parse", [&] {
    const std::string bytes = ReadAll(cfg.input);
    out.checksum = Fnv1a64(bytes);
    std::istringstream stream(bytes);
    return ParseInteractions(stream, ParseOptions{cfg.format, cfg.delimiter});
  });
  out.lines_read = parsed.lines_read;
  out.duplicates = parsed.duplicates;
  FilterResult filtered =
      InStage("filter", [&] { return FilterCore(parsed.set, cfg.min_item, cfg.min_user, cfg.filter_iterate); });
  out.filter = filtered.summary;
  out.filtered = std::move(filtered.set);
  return out;
}

PreparedData Prepare(const ExperimentConfig& cfg) {
  InStage("config", [&] {
    cfg.Validate();
    return 0;
  });
  PrepSummary prep = PrepareFiltered(cfg);
  PreparedData data;
  data.lines_read = prep.lines_read;
  data.duplicates = prep.duplicates;
  data.checksum = prep.checksum;
  data.filter = prep.filter;
  data.split = InStage("split", [&] { return Split(prep.filtered, cfg.split_ratio, cfg.seed); });
  data.profile =
      InStage("profile", [&] { return MakePopularityProfile(data.split.train, cfg.head_fraction); });
  data.weights = InStage("weights", [&] { return ItemWeights(data.profile, cfg.clamp_floor); });
  const auto& train = data.split.train;
  const auto& test = data.split.test;
  for (UserIndex u = 0; u < test.num_users(); ++u) {
    if (test.user_items(u).empty()) continue;
    if (train.user_items(u).empty()) {
      ++data.excluded_users;
    } else {
      data.eval_users.push_back(u);
    }
  }
  return data;
}

BuiltScorer BuildScorer(const PreparedData& data, Algorithm algorithm, const ExperimentConfig& cfg,
                        std::optional<FactorModel> preloaded) {
  const std::string stage = fmt::format("train:{}", AlgorithmName(algorithm));
  return InStage(stage, [&]() -> BuiltScorer {
    const auto start = std::chrono::steady_clock::now();
    const auto& train = data.split.train;
    switch (algorithm) {
      case Algorithm::kPop:
        return {Scorer::Popularity(data.profile, train.num_users()), {}, SecondsSince(start)};
      case Algorithm::kRandom:
        return {Scorer::Random(cfg.seed, train.num_users(), train.num_items()), {},
                SecondsSince(start)};
      case Algorithm::kBpr:
      case Algorithm::kRankAls:
        break;
    }
    if (preloaded) {
      if (preloaded->num_users() != train.num_users() || preloaded->num_items() != train.num_items()) {
        throw ConfigError(fmt::format(
            "model shape {}x{} does not match the prepared data ({} users, {} items)",
            preloaded->num_users(), preloaded->num_items(), train.num_users(), train.num_items()));
      }
      return {Scorer::FromFactors(algorithm, std::move(*preloaded)), {}, 0.0};
    }
    const TrainConfig tcfg = cfg.TrainConfigFor(algorithm);
    TrainedModel trained =
        algorithm == Algorithm::kBpr ? TrainBpr(train, tcfg) : TrainRankAls(train, tcfg);
    return {Scorer::FromFactors(algorithm, std::move(trained.model)), trained.report,
            SecondsSince(start)};
  });
}

AlgorithmEvaluation EvaluateScorer(const PreparedData& data, const Scorer& scorer,
                                   Algorithm algorithm, const ExperimentConfig& cfg) {
  AlgorithmEvaluation out;
  out.lists = InStage(fmt::format("recommend:{}", AlgorithmName(algorithm)), [&] {
    Reranker reranker(scorer, data.weights, data.split.train, cfg.normalize, cfg.k,
                      cfg.exclude_train);
    return reranker.Recommend(data.eval_users, cfg.alphas, cfg.threads);
  });
  InStage(fmt::format("evaluate:{}", AlgorithmName(algorithm)), [&] {
    for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
      EvaluationInput input{out.lists[a], data.split.test, data.profile, cfg.k};
      MetricsReport report =
          Evaluate(input, std::string(AlgorithmName(algorithm)), cfg.alphas[a], cfg.seed);
      report.users_excluded = data.excluded_users;
      out.reports.push_back(std::move(report));
    }
    return 0;
  });
  return out;
}

SweepResult RunExperiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  PreparedData data = Prepare(cfg);
  SweepResult result;
  auto& meta = result.provenance;
  for (const auto& [key, value] : cfg.ToKeyValues()) meta.emplace_back("config." + key, value);
  meta.emplace_back("dataset.path", cfg.input);
  meta.emplace_back("dataset.fnv1a64", fmt::format("{:016x}", data.checksum));
  meta.emplace_back("dataset.lines", std::to_string(data.lines_read));
  meta.emplace_back("dataset.duplicates", std::to_string(data.duplicates));
  auto counts = [&meta](const std::string& stage, const EntityCounts& c) {
    meta.emplace_back(stage + ".users", std::to_string(c.users));
    meta.emplace_back(stage + ".items", std::to_string(c.items));
    meta.emplace_back(stage + ".ratings", std::to_string(c.ratings));
  };
  counts("filter.input", data.filter.before);
  counts("filter.after_item_pass", data.filter.after_item_pass);
  counts("filter.after_user_pass", data.filter.after_user_pass);
  meta.emplace_back("filter.pass_order", "items,users");
  meta.emplace_back("filter.iterated", data.filter.iterated ? "true" : "false");
  meta.emplace_back("filter.rounds", std::to_string(data.filter.rounds));
  meta.emplace_back("split.train", std::to_string(data.split.train.size()));
  meta.emplace_back("split.test", std::to_string(data.split.test.size()));
  meta.emplace_back("split.test_only_users", std::to_string(data.split.test_only_users));
  meta.emplace_back("split.test_only_items", std::to_string(data.split.test_only_items));
  meta.emplace_back("profile.head", std::to_string(data.profile.head.size()));
  meta.emplace_back("profile.long_tail", std::to_string(data.profile.long_tail.size()));
  meta.emplace_back("eval.users", std::to_string(data.eval_users.size()));
  meta.emplace_back("eval.excluded_users", std::to_string(data.excluded_users));

  for (Algorithm algorithm : cfg.algorithms) {
    const std::string name(AlgorithmName(algorithm));
    BuiltScorer built = BuildScorer(data, algorithm, cfg);
    const auto eval_start = std::chrono::steady_clock::now();
    AlgorithmEvaluation eval = EvaluateScorer(data, built.scorer, algorithm, cfg);
    meta.emplace_back("train." + name + ".epochs_run", std::to_string(built.report.epochs_run));
    meta.emplace_back("train." + name + ".skipped_samples",
                      std::to_string(built.report.skipped_samples));
    meta.emplace_back("train." + name + ".ridge_fallbacks",
                      std::to_string(built.report.ridge_fallbacks));
    meta.emplace_back("timing." + name + ".train_seconds", fmt::format("{:.3f}", built.train_seconds));
    meta.emplace_back("timing." + name + ".evaluate_seconds",
                      fmt::format("{:.3f}", SecondsSince(eval_start)));
    for (auto& r : eval.reports) result.reports.push_back(std::move(r));
  }
  meta.emplace_back("timing.total_seconds", fmt::format("{:.3f}", SecondsSince(start)));
  return result;
}

std::string MetricsCsv(const std::vector<MetricsReport>& reports) {
  std::string out = std::string(kMetricsCsvHeader) + "\n";
  for (const auto& r : reports) out += MetricsCsvRow(r) + "\n";
  return out;
}

std::string LccTableCsv(const std::vector<MetricsReport>& reports) {
  std::vector<std::string> algorithms;
  std::vector<double> alphas;
  for (const auto& r : reports) {
    if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end()) {
      algorithms.push_back(r.algorithm);
    }
    if (std::find(alphas.begin(), alphas.end(), r.alpha) == alphas.end()) alphas.push_back(r.alpha);
  }
  std::string out = "algorithm";
  for (double a : alphas) out += fmt::format(",{}", a);
  out += "\n";
  for (const auto& name : algorithms) {
    out += name;
    for (double a : alphas) {
      auto it = std::find_if(reports.begin(), reports.end(),
                             [&](const MetricsReport& r) { return r.algorithm == name && r.alpha == a; });
      if (it == reports.end() || !it->lcc) {
        out += ",NA";
      } else {
        out += fmt::format(",{}", *it->lcc);
      }
    }
    out += "\n";
  }
  return out;
}

void EmitReports(const SweepResult& result, const std::string& dir) {
  if (result.reports.empty()) throw Error("sweep produced no reports; nothing written");
  std::string meta;
  for (const auto& [key, value] : result.provenance) meta += key + "=" + value + "\n";
  const std::vector<std::pair<std::string, std::string>> files = {
      {"metrics.csv", MetricsCsv(result.reports)},
      {"lcc_table.csv", LccTableCsv(result.reports)},
      {"run.meta", meta},
  };

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(dir, "cannot create output directory: " + ec.message());
  std::vector<fs::path> staged;
  try {
    for (const auto& [name, content] : files) {
      const fs::path tmp = fs::path(dir) / (name + ".tmp");
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError(tmp.string(), "cannot open for writing");
      staged.push_back(tmp);
      out << content;
      out.close();
      if (!out) throw IoError(tmp.string(), "write failed");
    }
  } catch (...) {
    for (const auto& p : staged) fs::remove(p, ec);
    throw;
  }
  for (std::size_t f = 0; f < files.size(); ++f) {
    const fs::path target = fs::path(dir) / files[f].first;
    fs::rename(staged[f], target, ec);
    if (ec) throw IoError(target.string(), "cannot finalize: " + ec.message());
  }
}

}  // namespace longtail
