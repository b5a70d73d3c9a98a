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
#include "longtail/rank_als.hpp"

#include <Eigen/Cholesky>

namespace longtail {

namespace {

Eigen::MatrixXd GatherRows(const FactorMatrix& m, std::span<const std::uint32_t> rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = m.row(rows[r]);
  return out;
}

Eigen::VectorXd ToVector(std::span<const double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

RankAlsTrainer::RankAlsTrainer(const InteractionSet& train, const TrainConfig& cfg)
    : train_(train), cfg_(cfg) {
  cfg_.Validate();
  TrainConfig init = cfg_;
  init.item_bias = false;
  model_ = InitialFactors(train.num_users(), train.num_items(), init);

  support_.resize(train.num_items());
  for (ItemIndex j = 0; j < train.num_items(); ++j) {
    support_[j] = cfg_.support_weighting ? static_cast<double>(train.item_users(j).size()) : 1.0;
    support_total_ += support_[j];
  }
  rated_count_.assign(train.num_users(), 0.0);
  rating_sum_.assign(train.num_users(), 0.0);
  support_rating_sum_.assign(train.num_users(), 0.0);
  for (const auto& x : train.interactions()) {
    rated_count_[x.user] += 1.0;
    rating_sum_[x.user] += x.rating;
    support_rating_sum_[x.user] += support_[x.item] * x.rating;
  }
}

Eigen::VectorXd RankAlsTrainer::Solve(const Eigen::MatrixXd& lhs, const Eigen::VectorXd& rhs) {
  Eigen::LLT<Eigen::MatrixXd> llt(lhs);
  if (llt.info() == Eigen::Success) return llt.solve(rhs);
  // Singular system (reg = 0 or degenerate factors): grow a ridge until the
  // Cholesky factorization succeeds.
  ++ridge_fallbacks_;
  const double scale = std::max(1.0, lhs.diagonal().cwiseAbs().maxCoeff());
  double ridge = std::max(cfg_.reg, 1e-10 * scale);
  const auto identity = Eigen::MatrixXd::Identity(lhs.rows(), lhs.cols());
  for (int attempt = 0; attempt < 40; ++attempt, ridge *= 10.0) {
    llt.compute(lhs + ridge * identity);
    if (llt.info() == Eigen::Success) return llt.solve(rhs);
  }
  return Eigen::VectorXd::Zero(rhs.size());
}

void RankAlsTrainer::UserStep() {
  const FactorMatrix& Q = model_.item_factors;
  FactorMatrix& P = model_.user_factors;
  const Eigen::Index d = Q.cols();
  const Eigen::VectorXd s = ToVector(support_);
  const double total = support_total_;

  // q~ = sum_j s_j q_j and A~ = sum_j s_j q_j q_j^T.
  const Eigen::VectorXd q_tilde = Q.transpose() * s;
  const Eigen::MatrixXd a_tilde = Q.transpose() * s.asDiagonal() * Q;
  const Eigen::MatrixXd ridge = cfg_.reg * Eigen::MatrixXd::Identity(d, d);

  for (UserIndex u = 0; u < train_.num_users(); ++u) {
    const auto items = train_.user_items(u);
    if (items.empty()) {
      P.row(u).setZero();
      continue;
    }
    const Eigen::MatrixXd Qu = GatherRows(Q, items);
    const Eigen::VectorXd r = ToVector(train_.user_ratings(u));
    Eigen::VectorXd sr(r.size());
    for (std::size_t k = 0; k < items.size(); ++k) {
      sr(static_cast<Eigen::Index>(k)) = support_[items[k]] * r(static_cast<Eigen::Index>(k));
    }
    const double c = rated_count_[u];

    const Eigen::MatrixXd A = Qu.transpose() * Qu;
    const Eigen::VectorXd q_bar = Qu.colwise().sum().transpose();
    const Eigen::VectorXd b = Qu.transpose() * r;
    const Eigen::VectorXd b_tilde = Qu.transpose() * sr;

    const Eigen::MatrixXd lhs = total * A - q_bar * q_tilde.transpose() -
                                q_tilde * q_bar.transpose() + c * a_tilde + ridge;
    const Eigen::VectorXd rhs = total * b - support_rating_sum_[u] * q_bar -
                                rating_sum_[u] * q_tilde + c * b_tilde;
    P.row(u) = Solve(lhs, rhs).transpose();
  }
}

void RankAlsTrainer::ItemStep() {
  const FactorMatrix& P = model_.user_factors;
  FactorMatrix& Q = model_.item_factors;
  const Eigen::Index d = Q.cols();
  const double total = support_total_;
  const Eigen::VectorXd s = ToVector(support_);
  const Eigen::MatrixXd ridge = cfg_.reg * Eigen::MatrixXd::Identity(d, d);

  // G = sum_u C_u p_u p_u^T
  const Eigen::VectorXd c = ToVector(rated_count_);
  const Eigen::MatrixXd G = P.transpose() * c.asDiagonal() * P;
  Eigen::VectorXd q_tilde = Q.transpose() * s;
  // h = sum_u p_u (sum_{i rated by u} p_u.q_i - sum_i r_ui), kept current as
  // item factors change.
  Eigen::VectorXd h = Eigen::VectorXd::Zero(d);
  for (UserIndex u = 0; u < train_.num_users(); ++u) {
    const auto items = train_.user_items(u);
    if (items.empty()) continue;
    double b = 0.0;
    for (ItemIndex i : items) b += P.row(u).dot(Q.row(i));
    h += (b - rating_sum_[u]) * P.row(u).transpose();
  }

  for (ItemIndex k = 0; k < train_.num_items(); ++k) {
    const auto users = train_.item_users(k);
    const double sk = support_[k];
    const Eigen::MatrixXd Pk = GatherRows(P, users);
    const Eigen::MatrixXd Rk = Pk.transpose() * Pk;

    const Eigen::VectorXd p_dot_qtilde = Pk * q_tilde;
    const Eigen::VectorXd p_dot_qk = Pk * Q.row(k).transpose();
    const auto ratings = train_.item_ratings(k);
    Eigen::VectorXd coeff(static_cast<Eigen::Index>(users.size()));
    for (std::size_t n = 0; n < users.size(); ++n) {
      const auto e = static_cast<Eigen::Index>(n);
      const UserIndex u = users[n];
      const double r = ratings[n];
      coeff(e) = p_dot_qtilde(e) - 2.0 * sk * p_dot_qk(e) + total * r - support_rating_sum_[u] +
                 sk * rated_count_[u] * r;
    }

    const Eigen::MatrixXd lhs = (total - 2.0 * sk) * Rk + sk * G + ridge;
    const Eigen::VectorXd rhs = Pk.transpose() * coeff + sk * h;
    const Eigen::VectorXd x = Solve(lhs, rhs);
    const Eigen::VectorXd delta = x - Q.row(k).transpose();
    q_tilde += sk * delta;
    h += Rk * delta;
    Q.row(k) = x.transpose();
  }
}

}  // namespace longtail
