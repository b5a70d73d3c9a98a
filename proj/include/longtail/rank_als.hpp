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

#include <vector>

#include <Eigen/Core>

#include "longtail/dataset.hpp"
#include "longtail/models.hpp"

namespace longtail {

// Ranking ALS. Minimizes
//
//   sum_u sum_{i rated by u} sum_j s_j ((p_u.q_i - p_u.q_j) - (r_ui - r_uj))^2
//     + reg * (|P|^2 + |Q|^2)
//
// where j ranges over all items, r_uj = 0 for items u has not rated, and s_j
// is an item support weight (training count of j, or 1 when support
// weighting is off). The user step solves every p_u in closed form. The item
// step visits items in index order and solves each q_k exactly with the
// other item factors held at their current values, so every step is an
// exact block-coordinate minimization.
class RankAlsTrainer {
 public:
  RankAlsTrainer(const InteractionSet& train, const TrainConfig& cfg);

  void UserStep();
  void ItemStep();

  const FactorModel& model() const { return model_; }
  FactorModel& mutable_model() { return model_; }
  const std::vector<double>& support() const { return support_; }
  std::size_t ridge_fallbacks() const { return ridge_fallbacks_; }

 private:
  Eigen::VectorXd Solve(const Eigen::MatrixXd& lhs, const Eigen::VectorXd& rhs);

  const InteractionSet& train_;
  TrainConfig cfg_;
  FactorModel model_;
  std::vector<double> support_;
  double support_total_ = 0.0;
  std::vector<double> rated_count_;         // C_u
  std::vector<double> rating_sum_;          // sum_i r_ui
  std::vector<double> support_rating_sum_;  // sum_i s_i r_ui
  std::size_t ridge_fallbacks_ = 0;
};

}  // namespace longtail
