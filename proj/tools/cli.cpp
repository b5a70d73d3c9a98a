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
#include "longtail/cli.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "longtail/config.hpp"
#include "longtail/error.hpp"
#include "longtail/harness.hpp"

namespace longtail {

namespace {

// "bpr.learning_rate" -> "--bpr-learning-rate"
std::string FlagFor(const std::string& key) {
  std::string flag = "--" + key;
  for (char& c : flag) {
    if (c == '.' || c == '_') c = '-';
  }
  return flag;
}

const std::map<std::string, std::string>& KeyHelp() {
  static const std::map<std::string, std::string> help = {
      {"input", "rating file"},
      {"format", "movielens-dat or delimited"},
      {"delimiter", "field delimiter for the delimited format (tab, comma, space or one char)"},
      {"min_user", "drop users with fewer ratings after the item pass"},
      {"min_item", "drop items with fewer ratings"},
      {"filter_iterate", "repeat the item and user passes until nothing changes"},
      {"split_ratio", "fraction of interactions assigned to train"},
      {"seed", "seed for the split, model initialization and the random scorer"},
      {"algorithms", "comma list of bpr, rank_als, pop, random"},
      {"alphas", "comma list of blend coefficients in [0,1], strictly increasing"},
      {"k", "recommendation list length"},
      {"head_fraction", "fraction of trained items forming the short head"},
      {"clamp_floor", "minimum effective popularity in the item weight"},
      {"normalize", "min-max scale base scores and weights before blending"},
      {"exclude_train", "never recommend a user's training items"},
      {"output", "output directory"},
      {"threads", "worker threads for list generation"},
  };
  return help;
}

struct KeyOptions {
  std::vector<std::pair<std::string, CLI::Option*>> options;
  std::map<std::string, std::string> values;
};

void AddKeys(CLI::App* cmd, KeyOptions& ko, const std::vector<std::string>& keys) {
  for (const auto& key : keys) {
    auto it = KeyHelp().find(key);
    const std::string help = it == KeyHelp().end() ? "model hyperparameter" : it->second;
    std::string names = FlagFor(key);
    if (key == "alphas") names += ",--alpha";
    if (key == "algorithms") names += ",--algorithm";
    auto* opt = cmd->add_option(names, ko.values[key], help);
    ko.options.emplace_back(key, opt);
  }
}

ExperimentConfig Resolve(const std::string& config_path, const KeyOptions& ko) {
  ExperimentConfig cfg;
  if (!config_path.empty()) cfg.ApplyAll(ReadConfigFile(config_path));
  for (const auto& [key, opt] : ko.options) {
    if (opt->count() > 0) cfg.Apply(key, ko.values.at(key));
  }
  return cfg;
}

void PrintCounts(std::ostream& out, const PrepSummary& prep) {
  const auto& after = prep.filter.after_user_pass;
  out << fmt::format("users={} items={} ratings={}\n", after.users, after.items, after.ratings);
  out << fmt::format("lines={} duplicates={}\n", prep.lines_read, prep.duplicates);
  out << prep.filter.ToCsv();
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Popularity-aware top-k re-ranking and long-tail evaluation", "longtail"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  const std::vector<std::string> data_keys = {"input", "format", "delimiter", "min_user", "min_item",
                                             "filter_iterate"};
  const std::vector<std::string>& all_keys = ExperimentConfig::Keys();

  std::string config_path;

  auto* prep = app.add_subcommand("prep", "parse and filter a rating file, report counts");
  KeyOptions prep_keys;
  std::string summary_path;
  prep->add_option("--config", config_path, "key=value config file");
  AddKeys(prep, prep_keys, data_keys);
  prep->add_option("--summary", summary_path, "write the filter summary CSV here");

  auto* train = app.add_subcommand("train", "train one factor model and save it");
  KeyOptions train_keys;
  std::string model_out;
  train->add_option("--config", config_path, "key=value config file");
  AddKeys(train, train_keys, all_keys);
  train->add_option("--model-out", model_out, "model file to write")->required();

  auto* evaluate = app.add_subcommand("evaluate", "evaluate one algorithm at one alpha");
  KeyOptions eval_keys;
  std::string model_in, recs_out;
  evaluate->add_option("--config", config_path, "key=value config file");
  AddKeys(evaluate, eval_keys, all_keys);
  evaluate->add_option("--model", model_in, "load factors instead of training");
  evaluate->add_option("--recommendations-out", recs_out, "write the lists as CSV");

  auto* sweep = app.add_subcommand("sweep", "train every algorithm and sweep alpha");
  KeyOptions sweep_keys;
  sweep->add_option("--config", config_path, "key=value config file");
  AddKeys(sweep, sweep_keys, all_keys);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*prep) {
      ExperimentConfig cfg = Resolve(config_path, prep_keys);
      cfg.Validate();
      PrepSummary summary = PrepareFiltered(cfg);
      PrintCounts(out, summary);
      if (!summary_path.empty()) {
        std::ofstream f(summary_path, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError(summary_path, "cannot open for writing");
        f << summary.filter.ToCsv();
        if (!f) throw IoError(summary_path, "write failed");
      }
      return kExitOk;
    }

    if (*train) {
      ExperimentConfig cfg = Resolve(config_path, train_keys);
      if (cfg.algorithms.size() != 1 ||
          (cfg.algorithms[0] != Algorithm::kBpr && cfg.algorithms[0] != Algorithm::kRankAls)) {
        throw ConfigError("train needs exactly one --algorithm: bpr or rank_als");
      }
      PreparedData data = Prepare(cfg);
      BuiltScorer built = BuildScorer(data, cfg.algorithms[0], cfg);
      SaveModelFile(*built.scorer.factors(), model_out);
      out << fmt::format("algorithm={} users={} items={} dim={} epochs={} seconds={:.3f}\n",
                         AlgorithmName(cfg.algorithms[0]), built.scorer.num_users(),
                         built.scorer.num_items(), built.scorer.factors()->dim(),
                         built.report.epochs_run, built.train_seconds);
      out << "model=" << model_out << "\n";
      return kExitOk;
    }

    if (*evaluate) {
      ExperimentConfig cfg = Resolve(config_path, eval_keys);
      if (cfg.algorithms.size() != 1) throw ConfigError("evaluate needs exactly one --algorithm");
      if (cfg.alphas.size() != 1) throw ConfigError("evaluate needs exactly one --alpha");
      PreparedData data = Prepare(cfg);
      std::optional<FactorModel> preloaded;
      if (!model_in.empty()) preloaded = LoadModelFile(model_in);
      BuiltScorer built = BuildScorer(data, cfg.algorithms[0], cfg, std::move(preloaded));
      AlgorithmEvaluation eval = EvaluateScorer(data, built.scorer, cfg.algorithms[0], cfg);
      out << kMetricsCsvHeader << "\n" << MetricsCsvRow(eval.reports.front()) << "\n";
      if (!recs_out.empty()) {
        std::ofstream f(recs_out, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError(recs_out, "cannot open for writing");
        WriteRecommendationsCsv(f, eval.lists.front(), built.scorer, data.weights,
                                data.split.train.users(), data.split.train.items());
        if (!f) throw IoError(recs_out, "write failed");
      }
      return kExitOk;
    }

    ExperimentConfig cfg = Resolve(config_path, sweep_keys);
    if (cfg.output.empty()) throw ConfigError("sweep needs --output (or output= in the config)");
    SweepResult result = RunExperiment(cfg);
    EmitReports(result, cfg.output);
    out << MetricsCsv(result.reports);
    out << "wrote " << cfg.output << "/metrics.csv, lcc_table.csv, run.meta\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace longtail
