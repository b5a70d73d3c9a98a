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
#include "longtail/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "longtail/error.hpp"

namespace longtail {

WeightVector WeightVector::Custom(std::vector<double> weights) {
  for (double x : weights) {
    if (!std::isfinite(x) || x < 0.0) throw ConfigError("custom weights must be finite and >= 0");
  }
  WeightVector v;
  v.w = std::move(weights);
  v.scheme = WeightScheme::kCustom;
  return v;
}

WeightVector ItemWeights(const PopularityProfile& profile, std::uint32_t clamp_floor) {
  if (clamp_floor < 2) {
    throw ConfigError(fmt::format("clamp_floor must be >= 2 (ln(1) = 0), got {}", clamp_floor));
  }
  if (profile.rho.empty()) throw ConfigError("popularity profile is empty");
  WeightVector v;
  v.scheme = WeightScheme::kInverseLogPopularity;
  v.clamp_floor = clamp_floor;
  v.w.resize(profile.rho.size());
  for (std::size_t i = 0; i < profile.rho.size(); ++i) {
    const double rho = static_cast<double>(std::max(profile.rho[i], clamp_floor));
    v.w[i] = 1.0 / std::log(rho);
  }
  return v;
}

void BlendConfig::Validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ConfigError(fmt::format("alpha must lie in [0, 1], got {}", alpha));
  }
  if (k < 1) throw ConfigError(fmt::format("k must be >= 1, got {}", k));
}

std::vector<double> MinMaxNormalize(std::span<const double> values) {
  std::vector<double> out(values.size(), 0.0);
  if (values.empty()) return out;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return out;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - *lo) / range;
  return out;
}

NormalizedScores NormalizeScores(std::span<const double> base, const WeightVector& weights) {
  if (base.empty()) throw ConfigError("normalize_scores needs at least one item");
  return {MinMaxNormalize(base), MinMaxNormalize(weights.w)};
}

void BlendInto(std::span<const double> base, std::span<const double> weights, double alpha,
               std::span<double> out) {
  const double keep = 1.0 - alpha;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = keep * base[i] + alpha * weights[i];
}

std::vector<double> Blend(std::span<const double> base, const WeightVector& weights,
                          const BlendConfig& cfg) {
  cfg.Validate();
  if (base.size() != weights.size()) {
    throw ConfigError(fmt::format("base scores cover {} items but weights cover {}", base.size(),
                                  weights.size()));
  }
  std::vector<double> out(base.size());
  if (cfg.normalize) {
    const auto n = NormalizeScores(base, weights);
    BlendInto(n.base, n.weights, cfg.alpha, out);
  } else {
    BlendInto(base, weights.w, cfg.alpha, out);
  }
  return out;
}

RecommendationList TopK(UserIndex user, std::span<const double> scores,
                        std::span<const ItemIndex> excluded, std::size_t k) {
  std::vector<ItemIndex> candidates;
  candidates.reserve(scores.size());
  auto skip = excluded.begin();
  for (ItemIndex i = 0; i < scores.size(); ++i) {
    while (skip != excluded.end() && *skip < i) ++skip;
    if (skip != excluded.end() && *skip == i) continue;
    candidates.push_back(i);
  }
  if (candidates.empty()) {
    throw EmptyCandidatesError(fmt::format("user {} has no candidate items", user));
  }
  const std::size_t n = std::min(k, candidates.size());
  const auto better = [&](ItemIndex a, ItemIndex b) {
    return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
  };
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(n),
                    candidates.end(), better);
  RecommendationList list;
  list.user = user;
  list.items.assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(n));
  list.scores.reserve(n);
  for (ItemIndex i : list.items) list.scores.push_back(scores[i]);
  return list;
}

RecommendationList RecommendTopK(const Scorer& scorer, const WeightVector& weights, UserIndex user,
                                 const InteractionSet& train, const BlendConfig& cfg) {
  cfg.Validate();
  if (user >= scorer.num_users()) throw IndexError(fmt::format("user index {} out of range", user));
  std::vector<double> base(scorer.num_items());
  scorer.ScoreUser(user, base);
  const auto upsilon = Blend(base, weights, cfg);
  std::span<const ItemIndex> excluded;
  if (cfg.exclude_train) excluded = train.user_items(user);
  return TopK(user, upsilon, excluded, static_cast<std::size_t>(cfg.k));
}

Reranker::Reranker(const Scorer& scorer, const WeightVector& weights, const InteractionSet& train,
                   bool normalize, int k, bool exclude_train)
    : scorer_(scorer),
      train_(train),
      weights_(normalize ? MinMaxNormalize(weights.w) : weights.w),
      normalize_(normalize),
      k_(k),
      exclude_train_(exclude_train) {
  if (weights.size() != scorer.num_items()) {
    throw ConfigError(fmt::format("scorer covers {} items but weights cover {}", scorer.num_items(),
                                  weights.size()));
  }
  if (k < 1) throw ConfigError(fmt::format("k must be >= 1, got {}", k));
}

std::vector<std::vector<RecommendationList>> Reranker::Recommend(std::span<const UserIndex> users,
                                                                 std::span<const double> alphas,
                                                                 int threads) const {
  for (double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw ConfigError(fmt::format("alpha must lie in [0, 1], got {}", a));
  }
  std::vector<std::vector<RecommendationList>> out(alphas.size(),
                                                   std::vector<RecommendationList>(users.size()));
  const std::size_t ni = scorer_.num_items();

  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<double> base(ni), upsilon(ni);
    for (std::size_t n = begin; n < end; ++n) {
      const UserIndex u = users[n];
      scorer_.ScoreUser(u, base);
      if (normalize_) base = MinMaxNormalize(base);
      std::span<const ItemIndex> excluded;
      if (exclude_train_) excluded = train_.user_items(u);
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        BlendInto(base, weights_, alphas[a], upsilon);
        out[a][n] = TopK(u, upsilon, excluded, static_cast<std::size_t>(k_));
      }
    }
  };

  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, std::max<std::size_t>(users.size(), 1));
  if (workers == 1) {
    work(0, users.size());
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (users.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(users.size(), w * chunk);
    const std::size_t end = std::min(users.size(), begin + chunk);
    pool.emplace_back([&, w, begin, end] {
      try {
        work(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

void WriteRecommendationsCsv(std::ostream& out, std::span<const RecommendationList> lists,
                             const Scorer& scorer, const WeightVector& weights,
                             const IdIndex& users, const IdIndex& items) {
  out << "user,rank,item,upsilon,base_score,weight\n";
  for (const auto& list : lists) {
    for (std::size_t r = 0; r < list.items.size(); ++r) {
      const ItemIndex i = list.items[r];
      out << fmt::format("{},{},{},{},{},{}\n", users.id(list.user), r + 1, items.id(i),
                         list.scores[r], scorer.Score(list.user, i), weights.w.at(i));
    }
  }
}

}  // namespace longtail
