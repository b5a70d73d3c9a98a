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
#include "longtail/models.hpp"

#include <cmath>

#include <fmt/format.h>

#include "longtail/error.hpp"
#include "longtail/rank_als.hpp"
#include "longtail/rng.hpp"

namespace longtail {

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "bpr") return Algorithm::kBpr;
  if (name == "rank_als" || name == "als") return Algorithm::kRankAls;
  if (name == "pop") return Algorithm::kPop;
  if (name == "random") return Algorithm::kRandom;
  throw ConfigError(fmt::format("unknown algorithm '{}' (expected bpr, rank_als, pop or random)", name));
}

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kBpr:
      return "bpr";
    case Algorithm::kRankAls:
      return "rank_als";
    case Algorithm::kPop:
      return "pop";
    case Algorithm::kRandom:
      return "random";
  }
  return "unknown";
}

bool FactorModel::AllFinite() const {
  if (!user_factors.allFinite() || !item_factors.allFinite()) return false;
  for (double b : item_bias) {
    if (!std::isfinite(b)) return false;
  }
  return true;
}

bool operator==(const FactorModel& a, const FactorModel& b) {
  return a.user_factors.rows() == b.user_factors.rows() &&
         a.user_factors.cols() == b.user_factors.cols() &&
         a.item_factors.rows() == b.item_factors.rows() &&
         a.item_factors.cols() == b.item_factors.cols() && a.user_factors == b.user_factors &&
         a.item_factors == b.item_factors && a.item_bias == b.item_bias;
}

TrainConfig TrainConfig::BprDefaults() {
  TrainConfig cfg;
  cfg.dim = 32;
  cfg.learning_rate = 0.05;
  cfg.reg = 0.01;
  cfg.epochs = 100;
  return cfg;
}

TrainConfig TrainConfig::RankAlsDefaults() {
  TrainConfig cfg;
  cfg.dim = 32;
  cfg.reg = 0.1;
  cfg.epochs = 20;
  return cfg;
}

void TrainConfig::Validate() const {
  if (dim < 1) throw ConfigError(fmt::format("dim must be >= 1, got {}", dim));
  if (epochs < 0) throw ConfigError(fmt::format("epochs must be >= 0, got {}", epochs));
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError(fmt::format("learning_rate must be > 0, got {}", learning_rate));
  }
  if (!(reg >= 0.0) || !std::isfinite(reg)) {
    throw ConfigError(fmt::format("reg must be >= 0, got {}", reg));
  }
  if (!(init_stddev >= 0.0) || !std::isfinite(init_stddev)) {
    throw ConfigError(fmt::format("init_stddev must be >= 0, got {}", init_stddev));
  }
}

FactorModel InitialFactors(std::size_t num_users, std::size_t num_items, const TrainConfig& cfg) {
  Rng rng(cfg.seed);
  FactorModel m;
  m.user_factors.resize(static_cast<Eigen::Index>(num_users), cfg.dim);
  m.item_factors.resize(static_cast<Eigen::Index>(num_items), cfg.dim);
  for (Eigen::Index r = 0; r < m.user_factors.rows(); ++r) {
    for (Eigen::Index c = 0; c < cfg.dim; ++c) m.user_factors(r, c) = rng.normal(0.0, cfg.init_stddev);
  }
  for (Eigen::Index r = 0; r < m.item_factors.rows(); ++r) {
    for (Eigen::Index c = 0; c < cfg.dim; ++c) m.item_factors(r, c) = rng.normal(0.0, cfg.init_stddev);
  }
  if (cfg.item_bias) m.item_bias.assign(num_items, 0.0);
  return m;
}

namespace {

void CheckTrainable(const InteractionSet& train) {
  if (train.empty()) throw ConfigError("training set is empty");
  if (train.num_items() < 2) throw ConfigError("training requires at least 2 items");
}

}  // namespace

TrainedModel TrainBpr(const InteractionSet& train, const TrainConfig& cfg) {
  cfg.Validate();
  CheckTrainable(train);
  TrainedModel out;
  out.model = InitialFactors(train.num_users(), train.num_items(), cfg);
  FactorMatrix& P = out.model.user_factors;
  FactorMatrix& Q = out.model.item_factors;
  std::vector<double>& bias = out.model.item_bias;
  const bool use_bias = !bias.empty();

  // Sampling uses its own stream so that it never shifts the initialization.
  Rng rng(splitmix64(cfg.seed ^ 0x62707273616d706cULL));
  const auto interactions = train.interactions();
  const std::size_t n = interactions.size();
  const std::size_t ni = train.num_items();
  const double lr = cfg.learning_rate;
  const double reg = cfg.reg;
  Eigen::RowVectorXd pu(cfg.dim);

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    for (std::size_t step = 0; step < n; ++step) {
      const auto& x = interactions[rng.below(n)];
      const UserIndex u = x.user;
      const ItemIndex i = x.item;
      if (train.user_items(u).size() >= ni) {
        ++out.report.skipped_samples;
        continue;
      }
      ItemIndex j = static_cast<ItemIndex>(rng.below(ni));
      while (train.Contains(u, j)) j = static_cast<ItemIndex>(rng.below(ni));

      pu = P.row(u);
      double diff = pu.dot(Q.row(i) - Q.row(j));
      if (use_bias) diff += bias[i] - bias[j];
      // d/dx ln sigma(x) = sigma(-x)
      const double g = 1.0 / (1.0 + std::exp(diff));

      P.row(u) += lr * (g * (Q.row(i) - Q.row(j)) - reg * pu);
      Q.row(i) += lr * (g * pu - reg * Q.row(i));
      Q.row(j) += lr * (-g * pu - reg * Q.row(j));
      if (use_bias) {
        bias[i] += lr * (g - reg * bias[i]);
        bias[j] += lr * (-g - reg * bias[j]);
      }
    }
    if (!out.model.AllFinite()) throw TrainingDivergedError(epoch, "non-finite BPR factor");
    out.report.epochs_run = epoch;
  }
  return out;
}

TrainedModel TrainRankAls(const InteractionSet& train, const TrainConfig& cfg) {
  cfg.Validate();
  if (train.empty()) throw ConfigError("training set is empty");
  RankAlsTrainer trainer(train, cfg);
  TrainedModel out;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    trainer.UserStep();
    trainer.ItemStep();
    if (!trainer.model().AllFinite()) throw TrainingDivergedError(epoch, "non-finite RankALS factor");
    out.report.epochs_run = epoch;
  }
  out.report.ridge_fallbacks = trainer.ridge_fallbacks();
  out.model = std::move(trainer.mutable_model());
  return out;
}

double RandomScore(std::uint64_t seed, UserIndex u, ItemIndex i) {
  const std::uint64_t h =
      splitmix64(splitmix64(seed) ^ ((std::uint64_t{u} << 32) | std::uint64_t{i}));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

Scorer Scorer::FromFactors(Algorithm kind, FactorModel model) {
  if (kind != Algorithm::kBpr && kind != Algorithm::kRankAls) {
    throw ConfigError("factor scorers must be bpr or rank_als");
  }
  if (model.user_factors.cols() != model.item_factors.cols()) {
    throw ConfigError("user and item factor dimensions differ");
  }
  if (!model.item_bias.empty() && model.item_bias.size() != model.num_items()) {
    throw ConfigError("item bias length does not match item count");
  }
  const std::size_t nu = model.num_users();
  const std::size_t ni = model.num_items();
  return Scorer(kind, std::move(model), nu, ni);
}

Scorer Scorer::Popularity(const PopularityProfile& profile, std::size_t num_users) {
  std::vector<double> rho(profile.rho.begin(), profile.rho.end());
  return Scorer(Algorithm::kPop, std::move(rho), num_users, profile.num_items());
}

Scorer Scorer::Random(std::uint64_t seed, std::size_t num_users, std::size_t num_items) {
  return Scorer(Algorithm::kRandom, RandomState{seed}, num_users, num_items);
}

void Scorer::CheckRange(UserIndex u, ItemIndex i) const {
  if (u >= num_users_ || i >= num_items_) {
    throw IndexError(fmt::format("score({}, {}) outside ranges ({}, {})", u, i, num_users_, num_items_));
  }
}

double Scorer::Score(UserIndex u, ItemIndex i) const {
  CheckRange(u, i);
  if (const auto* m = std::get_if<FactorModel>(&state_)) {
    double s = m->user_factors.row(u).dot(m->item_factors.row(i));
    if (!m->item_bias.empty()) s += m->item_bias[i];
    return s;
  }
  if (const auto* rho = std::get_if<std::vector<double>>(&state_)) return (*rho)[i];
  return RandomScore(std::get<RandomState>(state_).seed, u, i);
}

void Scorer::ScoreUser(UserIndex u, std::span<double> out) const {
  if (out.size() != num_items_) throw IndexError("score buffer size does not match item count");
  if (num_items_ == 0) return;
  CheckRange(u, 0);
  if (const auto* m = std::get_if<FactorModel>(&state_)) {
    // Row-wise dots rather than one matrix-vector product, so every value is
    // bit-identical to Score(u, i).
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = m->user_factors.row(u).dot(m->item_factors.row(static_cast<Eigen::Index>(i)));
      if (!m->item_bias.empty()) out[i] += m->item_bias[i];
    }
    return;
  }
  if (const auto* rho = std::get_if<std::vector<double>>(&state_)) {
    std::copy(rho->begin(), rho->end(), out.begin());
    return;
  }
  const std::uint64_t seed = std::get<RandomState>(state_).seed;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = RandomScore(seed, u, static_cast<ItemIndex>(i));
}

}  // namespace longtail
