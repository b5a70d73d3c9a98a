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

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "longtail/dataset.hpp"
#include "longtail/weighting.hpp"

namespace longtail {

// Recommendation lists for the evaluated test users. Every list's user must
// have test interactions and every listed item must lie in the profile's
// index range; Validate() enforces both.
struct EvaluationInput {
  std::span<const RecommendationList> lists;
  const InteractionSet& test;
  const PopularityProfile& profile;
  int k = 10;

  void Validate() const;
};

// Mean of |L(u) & test(u)| / k. Every test interaction counts as relevant.
double PrecisionAtK(const EvaluationInput& input);

// sum_u sum_{i in L(u)} rho(i) / (|U_t| * k), with raw training counts.
double RecommendationPopularity(const EvaluationInput& input);

// Mean of |L(u) & long tail| / |L(u)|.
double AveragePercentageLongTail(const EvaluationInput& input);

// |union of L(u) & long tail| / |long tail|. Throws UndefinedMetricError
// when the long tail is empty.
double LongTailCoverage(const EvaluationInput& input);

struct MetricsReport {
  std::string algorithm;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  int k = 10;
  double precision = 0.0;
  double rp = 0.0;
  double apl = 0.0;
  std::optional<double> lcc;  // absent when the long tail is empty
  std::size_t users_evaluated = 0;
  std::size_t users_excluded = 0;  // test users with no training data

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

MetricsReport Evaluate(const EvaluationInput& input, std::string algorithm, double alpha,
                       std::uint64_t seed);

constexpr const char* kMetricsCsvHeader = "algorithm,alpha,seed,k,precision,rp,apl,lcc";

// One CSV row without trailing newline. Doubles use shortest round-trip
// formatting; an absent LCC is written as NA.
std::string MetricsCsvRow(const MetricsReport& report);

}  // namespace longtail
