#include "cmdp/random_mdp.hpp"

namespace cmdp {

TabularMdp random_mdp_with_init(std::size_t num_states, std::size_t num_actions,
                                std::size_t horizon, std::vector<double> initial_dist,
                                Rng& rng, double concentration) {
  std::vector<double> transitions(num_states * num_actions * num_states);
  std::vector<double> rewards(num_states * num_actions);
  for (std::size_t s = 0; s < num_states; ++s) {
    for (std::size_t a = 0; a < num_actions; ++a) {
      auto row = rng.sample_dirichlet(num_states, concentration);
      std::copy(row.begin(), row.end(),
                transitions.begin() + (s * num_actions + a) * num_states);
      rewards[s * num_actions + a] = rng.uniform();
    }
  }
  return TabularMdp(num_states, num_actions, horizon, std::move(transitions),
                    std::move(rewards), std::move(initial_dist));
}

TabularMdp random_mdp(std::size_t num_states, std::size_t num_actions,
                      std::size_t horizon, Rng& rng, double concentration) {
  auto init = rng.sample_dirichlet(num_states, 1.0);
  return random_mdp_with_init(num_states, num_actions, horizon, std::move(init), rng,
                              concentration);
}

NonstationaryPolicy random_policy(std::size_t horizon, std::size_t num_states,
                                  std::size_t num_actions, Rng& rng) {
  NonstationaryPolicy policy(horizon, num_states);
  for (std::size_t h = 0; h < horizon; ++h)
    for (std::size_t s = 0; s < num_states; ++s)
      policy.set_action(h, s, rng.uniform_index(num_actions));
  return policy;
}

}  // namespace cmdp
