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
#include "longtail/metrics.hpp"

#include <algorithm>
#include <vector>

#include <fmt/format.h>

#include "longtail/error.hpp"

namespace longtail {

void EvaluationInput::Validate() const {
  if (k < 1) throw ConfigError(fmt::format("k must be >= 1, got {}", k));
  for (const auto& list : lists) {
    if (list.user >= test.num_users() || test.user_items(list.user).empty()) {
      throw ConfigError(fmt::format("list for user {} has no test interactions", list.user));
    }
    for (ItemIndex i : list.items) {
      if (i >= profile.num_items()) {
        throw IndexError(fmt::format("recommended item {} outside profile range", i));
      }
    }
  }
}

double PrecisionAtK(const EvaluationInput& input) {
  if (input.lists.empty()) return 0.0;
  double total = 0.0;
  for (const auto& list : input.lists) {
    std::size_t hits = 0;
    for (ItemIndex i : list.items) hits += input.test.Contains(list.user, i);
    total += static_cast<double>(hits) / input.k;
  }
  return total / static_cast<double>(input.lists.size());
}

double RecommendationPopularity(const EvaluationInput& input) {
  if (input.lists.empty()) return 0.0;
  double total = 0.0;
  for (const auto& list : input.lists) {
    for (ItemIndex i : list.items) total += input.profile.rho[i];
  }
  return total / (static_cast<double>(input.lists.size()) * input.k);
}

double AveragePercentageLongTail(const EvaluationInput& input) {
  if (input.lists.empty()) return 0.0;
  double total = 0.0;
  for (const auto& list : input.lists) {
    if (list.items.empty()) continue;
    std::size_t tail = 0;
    for (ItemIndex i : list.items) tail += input.profile.in_long_tail[i];
    total += static_cast<double>(tail) / static_cast<double>(list.items.size());
  }
  return total / static_cast<double>(input.lists.size());
}

double LongTailCoverage(const EvaluationInput& input) {
  if (input.profile.long_tail.empty()) {
    throw UndefinedMetricError("long-tail coverage is undefined for an empty long tail");
  }
  std::vector<bool> seen(input.profile.num_items(), false);
  std::size_t covered = 0;
  for (const auto& list : input.lists) {
    for (ItemIndex i : list.items) {
      if (input.profile.in_long_tail[i] && !seen[i]) {
        seen[i] = true;
        ++covered;
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(input.profile.long_tail.size());
}

MetricsReport Evaluate(const EvaluationInput& input, std::string algorithm, double alpha,
                       std::uint64_t seed) {
  input.Validate();
  MetricsReport r;
  r.algorithm = std::move(algorithm);
  r.alpha = alpha;
  r.seed = seed;
  r.k = input.k;
  r.precision = PrecisionAtK(input);
  r.rp = RecommendationPopularity(input);
  r.apl = AveragePercentageLongTail(input);
  try {
    r.lcc = LongTailCoverage(input);
  } catch (const UndefinedMetricError&) {
    r.lcc.reset();
  }
  r.users_evaluated = input.lists.size();
  return r;
}

std::string MetricsCsvRow(const MetricsReport& r) {
  return fmt::format("{},{},{},{},{},{},{},{}", r.algorithm, r.alpha, r.seed, r.k, r.precision,
                     r.rp, r.apl, r.lcc ? fmt::format("{}", *r.lcc) : std::string("NA"));
}

}  // namespace longtail
