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
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "longtail/config.hpp"
#include "longtail/dataset.hpp"
#include "longtail/metrics.hpp"
#include "longtail/models.hpp"
#include "longtail/weighting.hpp"

namespace longtail {

// Everything downstream of the raw file that does not depend on the
// algorithm: filtered data, split, popularity profile, weights and the set
// of test users that can be scored.
struct PreparedData {
  std::size_t lines_read = 0;
  std::size_t duplicates = 0;
  std::uint64_t checksum = 0;  // FNV-1a of the raw input bytes
  FilterSummary filter;
  SplitPair split;
  PopularityProfile profile;
  WeightVector weights;
  std::vector<UserIndex> eval_users;  // test users with training data, ascending
  std::size_t excluded_users = 0;     // test users without training data
};

// Parse + filter only.
struct PrepSummary {
  std::size_t lines_read = 0;
  std::size_t duplicates = 0;
  std::uint64_t checksum = 0;
  FilterSummary filter;
  InteractionSet filtered;
};

PrepSummary PrepareFiltered(const ExperimentConfig& cfg);
PreparedData Prepare(const ExperimentConfig& cfg);

struct BuiltScorer {
  Scorer scorer;
  TrainReport report;
  double train_seconds = 0.0;
};

// Trains (bpr, rank_als) or constructs (pop, random) the base scorer. A
// preloaded factor model skips training; its shape must match the data.
BuiltScorer BuildScorer(const PreparedData& data, Algorithm algorithm, const ExperimentConfig& cfg,
                        std::optional<FactorModel> preloaded = std::nullopt);

struct AlgorithmEvaluation {
  std::vector<MetricsReport> reports;             // one per alpha
  std::vector<std::vector<RecommendationList>> lists;  // [alpha][eval user]
};

AlgorithmEvaluation EvaluateScorer(const PreparedData& data, const Scorer& scorer,
                                   Algorithm algorithm, const ExperimentConfig& cfg);

struct SweepResult {
  std::vector<MetricsReport> reports;  // algorithm-major, alphas in config order
  KeyValues provenance;
};

SweepResult RunExperiment(const ExperimentConfig& cfg);

// metrics.csv, lcc_table.csv and run.meta. Nothing is written unless every
// file can be produced.
void EmitReports(const SweepResult& result, const std::string& dir);

std::string MetricsCsv(const std::vector<MetricsReport>& reports);
std::string LccTableCsv(const std::vector<MetricsReport>& reports);

}  // namespace longtail
