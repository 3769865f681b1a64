#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cmdp/estimator.hpp"

namespace cmdp {

/// Inputs of the knownness threshold.
struct AlphaParams {
  double b1 = 1.0;
  double b2 = 1.0;
  double eps = 0.1;
  double delta = 0.1;
  std::size_t dim = 1;
  std::size_t num_states = 1;
};

/// Knownness threshold
///   alpha_S = min{ b1*eps^2/d^(3/2),
///                  b2*eps^2/(sqrt(d)*(S*ln2 + ln(d/delta))),
///                  eps/(2*sqrt(d)) }.
/// Requires eps, delta in (0, 1) and b1, b2 > 0.
double compute_alpha_s(const AlphaParams& params);

/// Norm used in the knownness test ||Q c|| <= alpha.
enum class KwikNorm { L2, L1 };

/// Online linear regression with vector-valued (next-state distribution)
/// labels, one learner per (s, a).
///
/// Each learner maintains Q = (I + C^T C)^{-1} incrementally over the
/// contexts C accepted by the update gate (rank-one downdate), the label
/// accumulator W = sum_t c_t y_t^T with y the one-hot next-state vector, and
/// the reward accumulator w_r = sum_t c_t r_t. A query context c is known
/// when ||Q c|| <= alpha; the prediction is then the raw regression row
/// c^T Q W (legalized by simplex projection downstream) and the clipped
/// scalar estimate c^T Q w_r. Updates apply only while the learner still
/// answers "don't know" for the incoming context.
class KwikEstimator final : public Estimator {
 public:
  KwikEstimator(std::size_t num_states, std::size_t num_actions, std::size_t dim,
                double alpha, KwikNorm norm = KwikNorm::L2);

  std::optional<Prediction> predict(const Context& c, std::size_t s,
                                    std::size_t a) const override;
  void update(const Context& c, std::size_t s, std::size_t a, std::size_t s_next,
              double reward) override;
  std::size_t wander_scope(const Context&) override { return 0; }
  std::size_t update_count() const override { return total_updates_; }
  nlohmann::ordered_json snapshot() const override;

  // per-(s,a) internals, exposed for tests and diagnostics
  const Eigen::MatrixXd& inverse_covariance(std::size_t s, std::size_t a) const {
    return block(s, a).Q;
  }
  const Eigen::MatrixXd& label_weights(std::size_t s, std::size_t a) const {
    return block(s, a).W;
  }
  const Eigen::VectorXd& reward_weights(std::size_t s, std::size_t a) const {
    return block(s, a).w_r;
  }
  std::size_t update_count(std::size_t s, std::size_t a) const {
    return block(s, a).updates;
  }

  double alpha() const { return alpha_; }
  std::size_t dim() const { return dim_; }

  static KwikEstimator from_snapshot(const nlohmann::ordered_json& j);

 private:
  struct Block {
    Eigen::MatrixXd Q;    // d x d, (I + C^T C)^{-1}
    Eigen::MatrixXd W;    // d x S
    Eigen::VectorXd w_r;  // d
    std::size_t updates = 0;
  };

  const Block& block(std::size_t s, std::size_t a) const {
    return blocks_[s * num_actions_ + a];
  }
  Block& block(std::size_t s, std::size_t a) { return blocks_[s * num_actions_ + a]; }

  Eigen::VectorXd to_vector(const Context& c) const;
  double gate_norm(const Eigen::VectorXd& qc) const;

  std::size_t num_states_;
  std::size_t num_actions_;
  std::size_t dim_;
  double alpha_;
  KwikNorm norm_;
  std::vector<Block> blocks_;
  std::size_t total_updates_ = 0;
};

}  // namespace cmdp
