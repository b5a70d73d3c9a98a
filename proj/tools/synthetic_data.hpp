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

// Deterministic generator of MovieLens-shaped rating data: power-law item
// popularity, user tastes from a low-rank latent model, ratings 1..5. Used by
// the test suites and for trying the CLI without a real dataset.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

#include <fmt/format.h>

#include "longtail/rng.hpp"

namespace longtail::synthetic {

struct Options {
  int users = 600;
  int items = 400;
  int dim = 6;
  double popularity_exponent = 0.9;  // item k draws with weight (k + 1)^-exponent
  double taste_strength = 1.5;       // how much latent affinity moves selection
  double mean_log_profile = 3.6;     // profile sizes are 15 + lognormal
  double sd_log_profile = 0.7;
  std::uint64_t seed = 7;
};

struct Rating {
  int user;
  int item;
  int stars;
  std::int64_t timestamp;
};

inline std::vector<Rating> Generate(const Options& opt) {
  Rng rng(opt.seed);
  const int d = opt.dim;
  std::vector<double> user_f(static_cast<std::size_t>(opt.users) * d);
  std::vector<double> item_f(static_cast<std::size_t>(opt.items) * d);
  for (auto& x : user_f) x = rng.normal(0.0, 1.0);
  for (auto& x : item_f) x = rng.normal(0.0, 1.0);

  // Popularity ranks are a seeded permutation of the ids.
  std::vector<int> rank(static_cast<std::size_t>(opt.items));
  for (int i = 0; i < opt.items; ++i) rank[static_cast<std::size_t>(i)] = i;
  for (int k = opt.items; k > 1; --k) {
    std::swap(rank[static_cast<std::size_t>(k - 1)],
              rank[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(k)))]);
  }
  std::vector<double> log_pop(static_cast<std::size_t>(opt.items));
  for (int i = 0; i < opt.items; ++i) {
    log_pop[static_cast<std::size_t>(i)] = -opt.popularity_exponent * std::log(rank[static_cast<std::size_t>(i)] + 1.0);
  }

  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Rating> out;
  std::vector<std::pair<double, int>> keys(static_cast<std::size_t>(opt.items));
  std::vector<double> affinity(static_cast<std::size_t>(opt.items));
  for (int u = 0; u < opt.users; ++u) {
    const int size = std::min(
        opt.items / 2,
        15 + static_cast<int>(std::exp(rng.normal(opt.mean_log_profile, opt.sd_log_profile))));
    for (int i = 0; i < opt.items; ++i) {
      double dot = 0.0;
      for (int c = 0; c < d; ++c) {
        dot += user_f[static_cast<std::size_t>(u) * d + c] * item_f[static_cast<std::size_t>(i) * d + c];
      }
      affinity[static_cast<std::size_t>(i)] = dot * norm;
      // Gumbel-top-k draws `size` items without replacement.
      double g = rng.uniform();
      while (g <= 0.0) g = rng.uniform();
      keys[static_cast<std::size_t>(i)] = {
          log_pop[static_cast<std::size_t>(i)] + opt.taste_strength * affinity[static_cast<std::size_t>(i)] - std::log(-std::log(g)),
          i};
    }
    std::partial_sort(keys.begin(), keys.begin() + size, keys.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int n = 0; n < size; ++n) {
      const int i = keys[static_cast<std::size_t>(n)].second;
      const double raw = 3.4 + 1.1 * affinity[static_cast<std::size_t>(i)] +
                         0.15 * log_pop[static_cast<std::size_t>(i)] + rng.normal(0.0, 0.6);
      const int stars = std::clamp(static_cast<int>(std::lround(raw)), 1, 5);
      out.push_back({u + 1, i + 1, stars, 978300000 + static_cast<std::int64_t>(out.size())});
    }
  }
  return out;
}

// movielens-dat layout: user::item::rating::timestamp
inline void WriteMovielens(std::ostream& out, const std::vector<Rating>& ratings) {
  for (const auto& r : ratings) out << fmt::format("{}::{}::{}::{}\n", r.user, r.item, r.stars, r.timestamp);
}

}  // namespace longtail::synthetic
