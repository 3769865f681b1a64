#pragma once

#include <optional>
#include <vector>

#include "cmdp/estimator.hpp"

namespace cmdp {

/// Ball radius of the context cover, r0 = min(eps/(8*H*lip_p), eps/(8*lip_r)).
/// A zero Lipschitz constant drops its term (1/0 treated as +infinity).
/// Rejects nonpositive eps/H and negative constants.
double compute_r0(double eps, std::size_t horizon, double lip_p, double lip_r);

/// Known-threshold visit count, ceil(128 * (S*ln2 + ln(S*A/delta)) * H^2 / eps^2).
/// Requires eps, delta in (0, 1].
std::size_t compute_m(double eps, double delta, std::size_t num_states,
                      std::size_t num_actions, std::size_t horizon);

/// Exploration estimator backed by an online greedy cover of the context
/// space: each observed context joins the nearest existing ball of radius
/// r0 or opens a new one centered on itself, and model estimates are
/// empirical frequencies over the data pooled within a ball. A pair (s, a)
/// is known in a ball once its visit count reaches the threshold m; counts
/// stop growing at m.
///
/// Because every new center is at least r0 from all previous centers, the
/// number of balls never exceeds the r0-packing number of the context space.
class CoverEstimator final : public Estimator {
 public:
  CoverEstimator(std::size_t num_states, std::size_t num_actions, double ball_radius,
                 std::size_t visit_threshold);

  std::optional<Prediction> predict(const Context& c, std::size_t s,
                                    std::size_t a) const override;
  void update(const Context& c, std::size_t s, std::size_t a, std::size_t s_next,
              double reward) override;
  std::size_t wander_scope(const Context& c) override {
    return locate_or_create_ball(c);
  }
  std::size_t update_count() const override { return total_updates_; }
  nlohmann::ordered_json snapshot() const override;

  /// Nearest existing center within r0, ties toward the lowest index.
  std::optional<std::size_t> locate_ball(const Context& c) const;

  /// Same, but appends c as a new center when no ball covers it.
  std::size_t locate_or_create_ball(const Context& c);

  std::size_t num_balls() const { return balls_.size(); }
  const Context& center(std::size_t j) const { return balls_[j].center; }
  std::size_t visits(std::size_t j, std::size_t s, std::size_t a) const {
    return balls_[j].n_sa[s * num_actions_ + a];
  }
  double ball_radius() const { return ball_radius_; }
  std::size_t visit_threshold() const { return visit_threshold_; }

  static CoverEstimator from_snapshot(const nlohmann::ordered_json& j);

 private:
  struct Ball {
    Context center;
    std::vector<std::size_t> n_sa;    // [S][A]
    std::vector<std::size_t> n_sas;   // [S][A][S]
    std::vector<double> reward_sum;   // [S][A]
  };

  Ball make_ball(const Context& center) const;

  std::size_t num_states_;
  std::size_t num_actions_;
  double ball_radius_;
  std::size_t visit_threshold_;
  std::vector<Ball> balls_;
  std::size_t total_updates_ = 0;
};

}  // namespace cmdp
