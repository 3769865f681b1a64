#pragma once

#include <vector>

#include "cmdp/context.hpp"
#include "cmdp/rng.hpp"
#include "cmdp/tabular_mdp.hpp"

namespace cmdp {

/// State layout of the bandit-style hard MDPs: a start state that fans out
/// uniformly over n bandit states, and two absorbing sinks with rewards 1
/// and 0. Total S = n + 3.
struct HardLayout {
  std::size_t bandit_states = 1;  // n
  std::size_t start() const { return 0; }
  std::size_t bandit(std::size_t i) const { return 1 + i; }  // i in [0, n)
  std::size_t plus() const { return 1 + bandit_states; }
  std::size_t minus() const { return 2 + bandit_states; }
  std::size_t num_states() const { return bandit_states + 3; }
};

/// Single hard MDP for an assignment z of per-bandit-state better actions.
/// From bandit state i, action 0 reaches the rewarding sink with probability
/// 1/2 + eps_prime/2; action z_i (when z_i != 0) with probability
/// 1/2 + eps_prime; every other action with probability 1/2. The rewarding
/// sink pays 1, the other sink 0, all remaining rewards are 0, and every
/// episode starts in the fan-out state.
TabularMdp build_hard_mdp(const std::vector<std::size_t>& assignment,
                          double eps_prime, std::size_t num_actions,
                          std::size_t horizon);

/// Gap parameter of the hard construction, 160*H*eps*e^4 / (H-2).
/// Far too large to be a probability at practical eps; experiment configs
/// override it. Requires H >= 3.
double epsilon_prime(double eps, std::size_t horizon);

/// Packing radius scale of the construction, 8 * epsilon_prime.
double epsilon_one(double eps, std::size_t horizon);

/// Adversarial contextual family: hard MDPs pinned at packing points, with
/// transitions at every other context pulled toward uniform,
///   p_c(+|i,a) = max over packing points c' of max(1/2, p_{c'}(+|i,a) - dist(c,c')/2).
/// The family is 1-Lipschitz in the context metric by construction and the
/// reward function does not vary with context.
class HardInstanceCmdp {
 public:
  /// assignments[j][i] is the better action z_i at packing point j
  /// (0 means no action beats the baseline). Packing points must be
  /// pairwise >= 8 * eps_prime apart.
  HardInstanceCmdp(std::vector<Context> packing_points,
                   std::vector<std::vector<std::size_t>> assignments,
                   double eps_prime, std::size_t num_actions, std::size_t horizon);

  /// Uniformly random assignments, drawn independently per packing point
  /// and bandit state.
  static HardInstanceCmdp random_assignments(std::vector<Context> packing_points,
                                             std::size_t bandit_states,
                                             double eps_prime,
                                             std::size_t num_actions,
                                             std::size_t horizon, Rng& rng);

  /// Interpolated probability of reaching the rewarding sink from bandit
  /// state i under action a at context c.
  double transition_to_plus(const Context& c, std::size_t bandit_state,
                            std::size_t a) const;

  TabularMdp instantiate(const Context& c) const;

  const std::vector<Context>& packing_points() const { return packing_points_; }
  const std::vector<std::vector<std::size_t>>& assignments() const {
    return assignments_;
  }
  double eps_prime() const { return eps_prime_; }
  const HardLayout& layout() const { return layout_; }
  std::size_t num_actions() const { return num_actions_; }
  std::size_t horizon() const { return horizon_; }

 private:
  /// p_{c'}(+|i,a) at packing point index j.
  double packed_plus_probability(std::size_t j, std::size_t bandit_state,
                                 std::size_t a) const;

  std::vector<Context> packing_points_;
  std::vector<std::vector<std::size_t>> assignments_;
  double eps_prime_;
  std::size_t num_actions_;
  std::size_t horizon_;
  HardLayout layout_;
};

}  // namespace cmdp
