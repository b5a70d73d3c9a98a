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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "longtail/dataset.hpp"
#include "longtail/models.hpp"

namespace longtail {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Every field is reachable through a flat key (see Keys()); config files
// and CLI flags both go through Apply().
struct ExperimentConfig {
  std::string input;
  Format format = Format::kMovielensDat;
  char delimiter = '\t';
  std::size_t min_user = 30;
  std::size_t min_item = 30;
  bool filter_iterate = false;
  double split_ratio = 0.8;
  std::uint64_t seed = 42;
  std::vector<Algorithm> algorithms = {Algorithm::kBpr, Algorithm::kRankAls, Algorithm::kPop,
                                       Algorithm::kRandom};
  TrainConfig bpr = TrainConfig::BprDefaults();
  TrainConfig rank_als = TrainConfig::RankAlsDefaults();
  std::vector<double> alphas = DefaultAlphas();
  int k = 10;
  double head_fraction = 0.2;
  std::uint32_t clamp_floor = 2;
  bool normalize = true;
  bool exclude_train = true;
  std::string output;
  int threads = 1;

  // 0, 0.05, ..., 0.5
  static std::vector<double> DefaultAlphas();
  static const std::vector<std::string>& Keys();

  void Apply(std::string_view key, std::string_view value);
  void ApplyAll(const KeyValues& values);
  void Validate() const;
  // Snapshot in Keys() order; feeding it back through ApplyAll reproduces
  // the configuration.
  KeyValues ToKeyValues() const;

  // Training config for one algorithm with the experiment seed applied.
  TrainConfig TrainConfigFor(Algorithm algorithm) const;
};

// Flat key=value text; '#' starts a comment line.
KeyValues ParseKeyValues(std::string_view text, const std::string& origin = "config");
KeyValues ReadConfigFile(const std::string& path);

}  // namespace longtail
