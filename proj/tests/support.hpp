#pragma once

// Shared fixtures and test-only oracles. Everything here stays independent
// of the library code paths it is used to check.

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "cmdp/estimator.hpp"
#include "cmdp/tabular_mdp.hpp"

namespace cmdp::test {

/// MDP where every reward is 1 and transitions are uniform.
inline TabularMdp all_rewards_one(std::size_t S, std::size_t A, std::size_t H) {
  std::vector<double> transitions(S * A * S, 1.0 / static_cast<double>(S));
  std::vector<double> rewards(S * A, 1.0);
  std::vector<double> init(S, 1.0 / static_cast<double>(S));
  return TabularMdp(S, A, H, std::move(transitions), std::move(rewards),
                    std::move(init));
}

/// Deterministic 2-state chain: action 0 moves 0 -> 1 and keeps 1 -> 1;
/// reward 1 only in state 1. Start in state 0.
inline TabularMdp two_state_chain(std::size_t H) {
  std::vector<double> transitions(2 * 1 * 2, 0.0);
  transitions[0 * 2 + 1] = 1.0;  // from 0
  transitions[1 * 2 + 1] = 1.0;  // from 1
  std::vector<double> rewards{0.0, 1.0};
  std::vector<double> init{1.0, 0.0};
  return TabularMdp(2, 1, H, std::move(transitions), std::move(rewards),
                    std::move(init));
}

/// Recursive trajectory-sum policy value; a third route independent of both
/// evaluate_policy (forward occupancy) and brute_force_value (odometer).
inline double enumeration_value(const TabularMdp& mdp,
                                const NonstationaryPolicy& policy) {
  const std::size_t H = mdp.horizon();
  std::function<double(std::size_t, std::size_t)> go =
      [&](std::size_t h, std::size_t s) -> double {
    if (h == H) return 0.0;
    const std::size_t a = policy.action(h, s);
    double v = mdp.reward(s, a);
    auto row = mdp.transition_row(s, a);
    for (std::size_t s2 = 0; s2 < mdp.num_states(); ++s2) {
      if (row[s2] > 0.0) v += row[s2] * go(h + 1, s2);
    }
    return v;
  };
  double value = 0.0;
  for (std::size_t s = 0; s < mdp.num_states(); ++s) {
    if (mdp.initial_dist()[s] > 0.0) value += mdp.initial_dist()[s] * go(0, s);
  }
  return value / static_cast<double>(H);
}

/// Iterates all A^(H*S) deterministic policies (use on tiny instances only).
inline bool next_policy(NonstationaryPolicy& policy, std::size_t num_actions) {
  for (std::size_t h = 0; h < policy.horizon(); ++h) {
    for (std::size_t s = 0; s < policy.num_states(); ++s) {
      const std::size_t a = policy.action(h, s) + 1;
      if (a < num_actions) {
        policy.set_action(h, s, a);
        return true;
      }
      policy.set_action(h, s, 0);
    }
  }
  return false;
}

/// Estimator that reports the true model on states marked known and
/// "don't know" elsewhere; the fully-known / partially-known limits of the
/// agent are tested against it.
class ExactEstimator final : public Estimator {
 public:
  ExactEstimator(std::function<TabularMdp(const Context&)> model,
                 std::vector<bool> known_states)
      : model_(std::move(model)), known_(std::move(known_states)) {}

  std::optional<Prediction> predict(const Context& c, std::size_t s,
                                    std::size_t a) const override {
    if (!known_[s]) return std::nullopt;
    const TabularMdp mdp = model_(c);
    auto row = mdp.transition_row(s, a);
    return Prediction{{row.begin(), row.end()}, mdp.reward(s, a)};
  }

  void update(const Context&, std::size_t, std::size_t, std::size_t,
              double) override {
    updates_ += 1;
  }

  std::size_t wander_scope(const Context&) override { return 0; }
  std::size_t update_count() const override { return updates_; }
  nlohmann::ordered_json snapshot() const override {
    return nlohmann::ordered_json{{"type", "exact"}};
  }

 private:
  std::function<TabularMdp(const Context&)> model_;
  std::vector<bool> known_;
  std::size_t updates_ = 0;
};

}  // namespace cmdp::test
