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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "longtail/dataset.hpp"

namespace longtail {

using FactorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Algorithm { kBpr, kRankAls, kPop, kRandom };

Algorithm ParseAlgorithm(std::string_view name);
std::string_view AlgorithmName(Algorithm algorithm);

// Latent factors; one row per dense user/item index of the training set.
struct FactorModel {
  FactorMatrix user_factors;
  FactorMatrix item_factors;
  std::vector<double> item_bias;  // empty when the model has no bias term

  int dim() const { return static_cast<int>(user_factors.cols()); }
  std::size_t num_users() const { return static_cast<std::size_t>(user_factors.rows()); }
  std::size_t num_items() const { return static_cast<std::size_t>(item_factors.rows()); }
  bool AllFinite() const;

  friend bool operator==(const FactorModel& a, const FactorModel& b);
};

struct TrainConfig {
  int dim = 32;
  double learning_rate = 0.05;  // BPR only
  double reg = 0.01;
  int epochs = 100;
  std::uint64_t seed = 42;
  double init_stddev = 0.1;
  bool item_bias = false;         // BPR only
  bool support_weighting = true;  // RankALS only: s_j = training count of j

  static TrainConfig BprDefaults();
  static TrainConfig RankAlsDefaults();
  void Validate() const;
};

struct TrainReport {
  int epochs_run = 0;
  // BPR: samples whose user had no unrated item to draw.
  std::size_t skipped_samples = 0;
  // RankALS: normal-equation solves that needed an extra ridge.
  std::size_t ridge_fallbacks = 0;
};

struct TrainedModel {
  FactorModel model;
  TrainReport report;
};

// Seeded Gaussian(0, init_stddev) initialization shared by both trainers.
FactorModel InitialFactors(std::size_t num_users, std::size_t num_items, const TrainConfig& cfg);

// Pairwise log-sigmoid SGD. Any rating counts as a positive; negatives are
// drawn uniformly from the user's unrated items.
TrainedModel TrainBpr(const InteractionSet& train, const TrainConfig& cfg);

// Alternating least squares on squared rating-difference errors.
TrainedModel TrainRankAls(const InteractionSet& train, const TrainConfig& cfg);

// Base relevance scorer. Immutable once built; Score is safe to call from
// several threads at once.
class Scorer {
 public:
  static Scorer FromFactors(Algorithm kind, FactorModel model);
  static Scorer Popularity(const PopularityProfile& profile, std::size_t num_users);
  static Scorer Random(std::uint64_t seed, std::size_t num_users, std::size_t num_items);

  Algorithm kind() const { return kind_; }
  std::size_t num_users() const { return num_users_; }
  std::size_t num_items() const { return num_items_; }

  double Score(UserIndex u, ItemIndex i) const;
  // Scores for every item of u; out.size() must equal num_items().
  void ScoreUser(UserIndex u, std::span<double> out) const;

  const FactorModel* factors() const { return std::get_if<FactorModel>(&state_); }

 private:
  struct RandomState {
    std::uint64_t seed;
  };
  using State = std::variant<FactorModel, std::vector<double>, RandomState>;

  Scorer(Algorithm kind, State state, std::size_t num_users, std::size_t num_items)
      : kind_(kind), state_(std::move(state)), num_users_(num_users), num_items_(num_items) {}
  void CheckRange(UserIndex u, ItemIndex i) const;

  Algorithm kind_;
  State state_;
  std::size_t num_users_;
  std::size_t num_items_;
};

// Seeded uniform [0, 1) value of (seed, u, i).
double RandomScore(std::uint64_t seed, UserIndex u, ItemIndex i);

// Binary model file; layout documented in docs/model_format.md.
void SaveModel(const FactorModel& model, std::ostream& out);
FactorModel LoadModel(std::istream& in);
void SaveModelFile(const FactorModel& model, const std::string& path);
FactorModel LoadModelFile(const std::string& path);

}  // namespace longtail
