#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cmdp {

/// Row-sum / distribution tolerance used by all validity checks.
inline constexpr double kProbTol = 1e-9;

/// Finite episodic MDP with a fixed horizon.
///
/// Transitions are stored as a flat [S][A][S] tensor of probabilities,
/// rewards as a flat [S][A] table of expected rewards in [0, 1], plus an
/// initial state distribution. Construction validates everything: each
/// transition row must be nonnegative and sum to 1 within 1e-9, rewards
/// must lie in [0, 1], and the initial distribution must be a distribution.
/// Instances are immutable afterwards and safe to share across threads.
class TabularMdp {
 public:
  TabularMdp(std::size_t num_states, std::size_t num_actions, std::size_t horizon,
             std::vector<double> transitions, std::vector<double> rewards,
             std::vector<double> initial_dist);

  std::size_t num_states() const { return num_states_; }
  std::size_t num_actions() const { return num_actions_; }
  std::size_t horizon() const { return horizon_; }

  double transition(std::size_t s, std::size_t a, std::size_t s_next) const {
    return transitions_[(s * num_actions_ + a) * num_states_ + s_next];
  }

  std::span<const double> transition_row(std::size_t s, std::size_t a) const {
    return {transitions_.data() + (s * num_actions_ + a) * num_states_, num_states_};
  }

  double reward(std::size_t s, std::size_t a) const {
    return rewards_[s * num_actions_ + a];
  }

  const std::vector<double>& transitions() const { return transitions_; }
  const std::vector<double>& rewards() const { return rewards_; }
  const std::vector<double>& initial_dist() const { return initial_dist_; }

 private:
  void validate() const;

  std::size_t num_states_;
  std::size_t num_actions_;
  std::size_t horizon_;
  std::vector<double> transitions_;
  std::vector<double> rewards_;
  std::vector<double> initial_dist_;
};

/// Deterministic nonstationary policy: an H x S table of action indices,
/// action(h, s) = pi_h(s).
class NonstationaryPolicy {
 public:
  NonstationaryPolicy(std::size_t horizon, std::size_t num_states)
      : horizon_(horizon), num_states_(num_states),
        actions_(horizon * num_states, 0) {}

  NonstationaryPolicy(std::size_t horizon, std::size_t num_states,
                      std::vector<std::size_t> actions);

  std::size_t horizon() const { return horizon_; }
  std::size_t num_states() const { return num_states_; }

  std::size_t action(std::size_t h, std::size_t s) const {
    return actions_[h * num_states_ + s];
  }

  void set_action(std::size_t h, std::size_t s, std::size_t a) {
    actions_[h * num_states_ + s] = a;
  }

  const std::vector<std::size_t>& table() const { return actions_; }

  /// pi_h(s) = a for all h, s.
  static NonstationaryPolicy constant(std::size_t horizon, std::size_t num_states,
                                      std::size_t a);

 private:
  std::size_t horizon_;
  std::size_t num_states_;
  std::vector<std::size_t> actions_;
};

/// One sampled episode: H+1 states, H actions, H realized rewards.
struct EpisodeTrace {
  std::vector<std::size_t> states;
  std::vector<std::size_t> actions;
  std::vector<double> rewards;
};

}  // namespace cmdp
