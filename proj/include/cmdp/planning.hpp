#pragma once

#include <functional>
#include <vector>

#include "cmdp/rng.hpp"
#include "cmdp/tabular_mdp.hpp"

namespace cmdp {

/// Result of exact finite-horizon planning. `value` is the optimal value
/// from the initial distribution under the 1/H normalization;
/// `state_values` holds the optimal value for each deterministic start state.
struct PlanResult {
  NonstationaryPolicy policy;
  double value = 0.0;
  std::vector<double> state_values;
};

/// Backward-induction (finite-horizon dynamic programming) optimal planning.
/// Action ties are broken toward the lowest index, so the result is
/// deterministic and reproducible.
PlanResult plan_optimal(const TabularMdp& mdp);

/// Exact expected normalized return of the policy, computed by forward DP
/// over state-occupancy vectors. No sampling is involved.
/// Throws std::invalid_argument if the policy shape does not match the MDP.
double evaluate_policy(const TabularMdp& mdp, const NonstationaryPolicy& policy);

/// Normalized value of the policy from each deterministic start state,
/// computed by backward DP. Independent code path from evaluate_policy.
std::vector<double> policy_state_values(const TabularMdp& mdp,
                                        const NonstationaryPolicy& policy);

/// State-occupancy vectors d[h][s] for h = 0..H under the policy
/// (d[0] is the initial distribution, d[H] the distribution of the
/// terminal state of the trace).
std::vector<std::vector<double>> occupancy(const TabularMdp& mdp,
                                           const NonstationaryPolicy& policy);

/// Value of the policy by explicit enumeration of all length-H state
/// trajectories: sum of trajectory probability times average reward.
/// Refuses instances with S^H > 10^6.
double brute_force_value(const TabularMdp& mdp, const NonstationaryPolicy& policy);

/// Induced MDP for a known set K: true transitions and rewards on states in
/// K, absorbing self-loops with reward 1 elsewhere.
TabularMdp induced_mdp(const TabularMdp& mdp, const std::vector<bool>& known);

/// Probability, per start state, that the trajectory visits a state s with
/// known[s] == false at some step h < H when following the policy.
std::vector<double> escape_probability_by_start(const TabularMdp& mdp,
                                                const NonstationaryPolicy& policy,
                                                const std::vector<bool>& known);

/// Same, weighted by the initial distribution.
double escape_probability(const TabularMdp& mdp, const NonstationaryPolicy& policy,
                          const std::vector<bool>& known);

/// Supplies an action given (h, s). Allows mid-episode decisions.
using ActionSource = std::function<std::size_t(std::size_t h, std::size_t s)>;

/// Samples one episode. Realized rewards equal the expected rewards
/// r(s, a); the trajectory is reproducible for a given Rng state.
EpisodeTrace sample_episode(const TabularMdp& mdp, const ActionSource& actions,
                            Rng& rng);

EpisodeTrace sample_episode(const TabularMdp& mdp, const NonstationaryPolicy& policy,
                            Rng& rng);

}  // namespace cmdp
