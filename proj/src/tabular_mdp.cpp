#include "cmdp/tabular_mdp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cmdp {

namespace {

void check_distribution(const double* row, std::size_t n, const std::string& what) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (row[i] < 0.0)
      throw std::invalid_argument(what + ": negative probability entry");
    sum += row[i];
  }
  if (std::abs(sum - 1.0) > kProbTol)
    throw std::invalid_argument(what + ": probabilities sum to " + std::to_string(sum));
}

}  // namespace

TabularMdp::TabularMdp(std::size_t num_states, std::size_t num_actions,
                       std::size_t horizon, std::vector<double> transitions,
                       std::vector<double> rewards, std::vector<double> initial_dist)
    : num_states_(num_states),
      num_actions_(num_actions),
      horizon_(horizon),
      transitions_(std::move(transitions)),
      rewards_(std::move(rewards)),
      initial_dist_(std::move(initial_dist)) {
  validate();
}

void TabularMdp::validate() const {
  if (num_states_ == 0 || num_actions_ == 0 || horizon_ == 0)
    throw std::invalid_argument("TabularMdp: S, A and H must be positive");
  if (transitions_.size() != num_states_ * num_actions_ * num_states_)
    throw std::invalid_argument("TabularMdp: transition tensor has wrong size");
  if (rewards_.size() != num_states_ * num_actions_)
    throw std::invalid_argument("TabularMdp: reward table has wrong size");
  if (initial_dist_.size() != num_states_)
    throw std::invalid_argument("TabularMdp: initial distribution has wrong size");

  for (std::size_t s = 0; s < num_states_; ++s) {
    for (std::size_t a = 0; a < num_actions_; ++a) {
      check_distribution(transitions_.data() + (s * num_actions_ + a) * num_states_,
                         num_states_,
                         "transition row (s=" + std::to_string(s) +
                             ", a=" + std::to_string(a) + ")");
      double r = reward(s, a);
      if (r < 0.0 || r > 1.0)
        throw std::invalid_argument("TabularMdp: reward outside [0, 1]");
    }
  }
  check_distribution(initial_dist_.data(), num_states_, "initial distribution");
}

NonstationaryPolicy::NonstationaryPolicy(std::size_t horizon, std::size_t num_states,
                                         std::vector<std::size_t> actions)
    : horizon_(horizon), num_states_(num_states), actions_(std::move(actions)) {
  if (actions_.size() != horizon_ * num_states_)
    throw std::invalid_argument("NonstationaryPolicy: action table has wrong size");
}

NonstationaryPolicy NonstationaryPolicy::constant(std::size_t horizon,
                                                  std::size_t num_states,
                                                  std::size_t a) {
  NonstationaryPolicy p(horizon, num_states);
  for (auto& x : p.actions_) x = a;
  return p;
}

}  // namespace cmdp
