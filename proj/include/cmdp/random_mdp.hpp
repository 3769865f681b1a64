#pragma once

#include "cmdp/rng.hpp"
#include "cmdp/tabular_mdp.hpp"

namespace cmdp {

/// Seeded random MDP: transition rows Dirichlet(concentration), rewards
/// uniform in [0, 1], initial distribution Dirichlet(1). Lower concentration
/// gives peakier rows.
TabularMdp random_mdp(std::size_t num_states, std::size_t num_actions,
                      std::size_t horizon, Rng& rng, double concentration = 1.0);

/// Variant with a shared, externally fixed initial distribution.
TabularMdp random_mdp_with_init(std::size_t num_states, std::size_t num_actions,
                                std::size_t horizon, std::vector<double> initial_dist,
                                Rng& rng, double concentration = 1.0);

NonstationaryPolicy random_policy(std::size_t horizon, std::size_t num_states,
                                  std::size_t num_actions, Rng& rng);

}  // namespace cmdp
