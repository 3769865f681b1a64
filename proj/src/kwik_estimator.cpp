#include "cmdp/kwik_estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace cmdp {

double compute_alpha_s(const AlphaParams& p) {
  if (p.eps <= 0.0 || p.eps >= 1.0 || p.delta <= 0.0 || p.delta >= 1.0)
    throw std::invalid_argument("compute_alpha_s: eps and delta must be in (0, 1)");
  if (p.b1 <= 0.0 || p.b2 <= 0.0)
    throw std::invalid_argument("compute_alpha_s: b1 and b2 must be positive");
  if (p.dim == 0 || p.num_states == 0)
    throw std::invalid_argument("compute_alpha_s: d and S must be positive");

  const double d = static_cast<double>(p.dim);
  const double sqrt_d = std::sqrt(d);
  // log(d * 2^S / delta) expanded as S*ln2 + ln(d/delta)
  const double log_term =
      static_cast<double>(p.num_states) * std::log(2.0) + std::log(d / p.delta);
  const double t1 = p.b1 * p.eps * p.eps / (d * sqrt_d);
  const double t2 = p.b2 * p.eps * p.eps / (sqrt_d * log_term);
  const double t3 = p.eps / (2.0 * sqrt_d);
  return std::min(t1, std::min(t2, t3));
}

KwikEstimator::KwikEstimator(std::size_t num_states, std::size_t num_actions,
                             std::size_t dim, double alpha, KwikNorm norm)
    : num_states_(num_states),
      num_actions_(num_actions),
      dim_(dim),
      alpha_(alpha),
      norm_(norm) {
  if (num_states_ == 0 || num_actions_ == 0 || dim_ == 0)
    throw std::invalid_argument("KwikEstimator: S, A and d must be positive");
  if (!(alpha_ > 0.0))
    throw std::invalid_argument("KwikEstimator: alpha must be positive");
  blocks_.resize(num_states_ * num_actions_);
  for (auto& b : blocks_) {
    b.Q = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim_),
                                    static_cast<Eigen::Index>(dim_));
    b.W = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim_),
                                static_cast<Eigen::Index>(num_states_));
    b.w_r = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim_));
  }
}

Eigen::VectorXd KwikEstimator::to_vector(const Context& c) const {
  if (c.dim() != dim_)
    throw std::invalid_argument("KwikEstimator: context dimension mismatch");
  return Eigen::Map<const Eigen::VectorXd>(c.coords.data(),
                                           static_cast<Eigen::Index>(dim_));
}

double KwikEstimator::gate_norm(const Eigen::VectorXd& qc) const {
  return norm_ == KwikNorm::L2 ? qc.norm() : qc.lpNorm<1>();
}

std::optional<Prediction> KwikEstimator::predict(const Context& c, std::size_t s,
                                                 std::size_t a) const {
  const Block& b = block(s, a);
  const Eigen::VectorXd cv = to_vector(c);
  const Eigen::VectorXd qc = b.Q * cv;
  if (gate_norm(qc) > alpha_) return std::nullopt;

  // c^T Q W = (Q c)^T W since Q is symmetric
  Eigen::RowVectorXd row = qc.transpose() * b.W;
  Prediction pred;
  pred.transition.assign(row.data(), row.data() + row.size());
  pred.reward = std::min(1.0, std::max(0.0, qc.dot(b.w_r)));
  return pred;
}

void KwikEstimator::update(const Context& c, std::size_t s, std::size_t a,
                           std::size_t s_next, double reward) {
  if (s_next >= num_states_)
    throw std::invalid_argument("KwikEstimator: next-state index out of range");
  Block& b = block(s, a);
  const Eigen::VectorXd cv = to_vector(c);
  const Eigen::VectorXd qc = b.Q * cv;
  if (gate_norm(qc) <= alpha_) return;  // only "don't know" contexts update

  // Sherman-Morrison downdate: (Q^-1 + c c^T)^-1 = Q - (Qc)(Qc)^T / (1 + c^T Q c)
  const double denom = 1.0 + cv.dot(qc);
  b.Q.noalias() -= (qc * qc.transpose()) / denom;
  b.W.col(static_cast<Eigen::Index>(s_next)) += cv;  // + c * one_hot(s_next)^T
  b.w_r += cv * reward;
  b.updates += 1;
  total_updates_ += 1;
}

nlohmann::ordered_json KwikEstimator::snapshot() const {
  nlohmann::ordered_json j;
  j["type"] = "kwik";
  j["num_states"] = num_states_;
  j["num_actions"] = num_actions_;
  j["dim"] = dim_;
  j["alpha"] = alpha_;
  j["norm"] = norm_ == KwikNorm::L2 ? "l2" : "l1";
  j["total_updates"] = total_updates_;
  auto& blocks = j["blocks"] = nlohmann::ordered_json::array();
  for (const auto& b : blocks_) {
    nlohmann::ordered_json jb;
    auto matrix_rows = [](const Eigen::MatrixXd& m) {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        std::vector<double> row(static_cast<std::size_t>(m.cols()));
        for (Eigen::Index col = 0; col < m.cols(); ++col)
          row[static_cast<std::size_t>(col)] = m(r, col);
        rows.push_back(row);
      }
      return rows;
    };
    jb["Q"] = matrix_rows(b.Q);
    jb["W"] = matrix_rows(b.W);
    jb["w_r"] = std::vector<double>(b.w_r.data(), b.w_r.data() + b.w_r.size());
    jb["updates"] = b.updates;
    blocks.push_back(std::move(jb));
  }
  return j;
}

KwikEstimator KwikEstimator::from_snapshot(const nlohmann::ordered_json& j) {
  if (j.at("type").get<std::string>() != "kwik")
    throw std::invalid_argument("KwikEstimator: snapshot type mismatch");
  KwikEstimator est(j.at("num_states").get<std::size_t>(),
                    j.at("num_actions").get<std::size_t>(),
                    j.at("dim").get<std::size_t>(), j.at("alpha").get<double>(),
                    j.at("norm").get<std::string>() == "l1" ? KwikNorm::L1
                                                            : KwikNorm::L2);
  est.total_updates_ = j.at("total_updates").get<std::size_t>();
  const auto& blocks = j.at("blocks");
  if (blocks.size() != est.blocks_.size())
    throw std::invalid_argument("KwikEstimator: snapshot block count mismatch");
  for (std::size_t i = 0; i < est.blocks_.size(); ++i) {
    const auto& jb = blocks[i];
    Block& b = est.blocks_[i];
    auto load_matrix = [](const nlohmann::ordered_json& rows, Eigen::MatrixXd& m) {
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        const auto row = rows[static_cast<std::size_t>(r)].get<std::vector<double>>();
        for (Eigen::Index col = 0; col < m.cols(); ++col)
          m(r, col) = row[static_cast<std::size_t>(col)];
      }
    };
    load_matrix(jb.at("Q"), b.Q);
    load_matrix(jb.at("W"), b.W);
    const auto wr = jb.at("w_r").get<std::vector<double>>();
    b.w_r = Eigen::Map<const Eigen::VectorXd>(wr.data(),
                                              static_cast<Eigen::Index>(wr.size()));
    b.updates = jb.at("updates").get<std::size_t>();
  }
  return est;
}

}  // namespace cmdp
