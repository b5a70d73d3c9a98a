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
#include <iosfwd>
#include <span>
#include <vector>

#include "longtail/dataset.hpp"
#include "longtail/models.hpp"

namespace longtail {

enum class WeightScheme { kInverseLogPopularity, kCustom };

// System-side preference per item. Weights are finite and non-negative.
struct WeightVector {
  std::vector<double> w;
  WeightScheme scheme = WeightScheme::kCustom;
  std::uint32_t clamp_floor = 2;

  std::size_t size() const { return w.size(); }
  static WeightVector Custom(std::vector<double> weights);
};

// w_i = 1 / ln(max(rho(i), clamp_floor)). clamp_floor must be >= 2.
WeightVector ItemWeights(const PopularityProfile& profile, std::uint32_t clamp_floor = 2);

struct BlendConfig {
  double alpha = 0.0;
  bool normalize = true;
  int k = 10;
  bool exclude_train = true;

  void Validate() const;
};

// Min-max scaling onto [0, 1]; a constant vector maps to all zeros.
std::vector<double> MinMaxNormalize(std::span<const double> values);

struct NormalizedScores {
  std::vector<double> base;
  std::vector<double> weights;
};

// Base scores scaled per user, weights scaled over the whole catalog.
NormalizedScores NormalizeScores(std::span<const double> base, const WeightVector& weights);

// (1 - alpha) * base + alpha * weight, element-wise. Inputs must already be
// on the scale the caller wants blended.
void BlendInto(std::span<const double> base, std::span<const double> weights, double alpha,
               std::span<double> out);

// Value-aware score for one user's base vector; normalizes first when
// cfg.normalize is set.
std::vector<double> Blend(std::span<const double> base, const WeightVector& weights,
                          const BlendConfig& cfg);

struct RecommendationList {
  UserIndex user = 0;
  std::vector<ItemIndex> items;
  std::vector<double> scores;  // blended scores, non-increasing

  friend bool operator==(const RecommendationList&, const RecommendationList&) = default;
};

// Highest-scoring candidates; equal scores ordered by ascending index.
// `excluded` must be sorted ascending.
RecommendationList TopK(UserIndex user, std::span<const double> scores,
                        std::span<const ItemIndex> excluded, std::size_t k);

RecommendationList RecommendTopK(const Scorer& scorer, const WeightVector& weights, UserIndex user,
                                 const InteractionSet& train, const BlendConfig& cfg);

// Batch re-ranking for many users and a grid of alphas from one pass of base
// scoring. Results match RecommendTopK exactly for every (user, alpha).
class Reranker {
 public:
  Reranker(const Scorer& scorer, const WeightVector& weights, const InteractionSet& train,
           bool normalize, int k, bool exclude_train);

  // result[a][n] is the list for users[n] at alphas[a]. Users fan out over
  // `threads` workers; output order never depends on the thread count.
  std::vector<std::vector<RecommendationList>> Recommend(std::span<const UserIndex> users,
                                                         std::span<const double> alphas,
                                                         int threads = 1) const;

 private:
  const Scorer& scorer_;
  const InteractionSet& train_;
  std::vector<double> weights_;  // normalized when normalize_ is set
  bool normalize_;
  int k_;
  bool exclude_train_;
};

// CSV with header user,rank,item,upsilon,base_score,weight. base_score and
// weight are the raw (unnormalized) values.
void WriteRecommendationsCsv(std::ostream& out, std::span<const RecommendationList> lists,
                             const Scorer& scorer, const WeightVector& weights,
                             const IdIndex& users, const IdIndex& items);

}  // namespace longtail
