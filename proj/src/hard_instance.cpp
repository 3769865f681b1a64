#include "cmdp/hard_instance.hpp"

#include <cmath>
#include <stdexcept>

namespace cmdp {

namespace {

void fill_hard_rows(std::vector<double>& transitions, std::vector<double>& rewards,
                    const HardLayout& layout, std::size_t num_actions,
                    const std::vector<double>& plus_probs) {
  // plus_probs: [n][A] probability of reaching the rewarding sink
  const std::size_t S = layout.num_states();
  const std::size_t A = num_actions;
  const std::size_t n = layout.bandit_states;

  auto row = [&](std::size_t s, std::size_t a) {
    return transitions.begin() + (s * A + a) * S;
  };

  for (std::size_t a = 0; a < A; ++a) {
    // start state fans out uniformly regardless of the action
    for (std::size_t i = 0; i < n; ++i)
      row(layout.start(), a)[layout.bandit(i)] = 1.0 / static_cast<double>(n);
    // absorbing sinks
    row(layout.plus(), a)[layout.plus()] = 1.0;
    row(layout.minus(), a)[layout.minus()] = 1.0;
    rewards[layout.plus() * A + a] = 1.0;
    rewards[layout.minus() * A + a] = 0.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < A; ++a) {
      const double p = plus_probs[i * A + a];
      row(layout.bandit(i), a)[layout.plus()] = p;
      row(layout.bandit(i), a)[layout.minus()] = 1.0 - p;
    }
  }
}

}  // namespace

TabularMdp build_hard_mdp(const std::vector<std::size_t>& assignment,
                          double eps_prime, std::size_t num_actions,
                          std::size_t horizon) {
  if (eps_prime < 0.0 || eps_prime > 0.5)
    throw std::invalid_argument("build_hard_mdp: eps_prime must be in [0, 1/2]");
  if (num_actions == 0) throw std::invalid_argument("build_hard_mdp: A must be positive");

  HardLayout layout{assignment.size()};
  const std::size_t S = layout.num_states();
  const std::size_t A = num_actions;

  std::vector<double> plus_probs(layout.bandit_states * A, 0.5);
  for (std::size_t i = 0; i < layout.bandit_states; ++i) {
    if (assignment[i] >= A)
      throw std::invalid_argument("build_hard_mdp: assignment index out of range");
    plus_probs[i * A + 0] = 0.5 + eps_prime / 2.0;
    if (assignment[i] != 0) plus_probs[i * A + assignment[i]] = 0.5 + eps_prime;
  }

  std::vector<double> transitions(S * A * S, 0.0);
  std::vector<double> rewards(S * A, 0.0);
  fill_hard_rows(transitions, rewards, layout, A, plus_probs);

  std::vector<double> init(S, 0.0);
  init[layout.start()] = 1.0;
  return TabularMdp(S, A, horizon, std::move(transitions), std::move(rewards),
                    std::move(init));
}

double epsilon_prime(double eps, std::size_t horizon) {
  if (horizon < 3) throw std::invalid_argument("epsilon_prime: requires H >= 3");
  if (eps <= 0.0) throw std::invalid_argument("epsilon_prime: eps must be positive");
  const double e4 = std::exp(4.0);
  return 160.0 * static_cast<double>(horizon) * eps * e4 /
         (static_cast<double>(horizon) - 2.0);
}

double epsilon_one(double eps, std::size_t horizon) {
  return 8.0 * epsilon_prime(eps, horizon);
}

HardInstanceCmdp::HardInstanceCmdp(std::vector<Context> packing_points,
                                   std::vector<std::vector<std::size_t>> assignments,
                                   double eps_prime, std::size_t num_actions,
                                   std::size_t horizon)
    : packing_points_(std::move(packing_points)),
      assignments_(std::move(assignments)),
      eps_prime_(eps_prime),
      num_actions_(num_actions),
      horizon_(horizon) {
  if (packing_points_.empty())
    throw std::invalid_argument("HardInstanceCmdp: empty packing");
  if (assignments_.size() != packing_points_.size())
    throw std::invalid_argument("HardInstanceCmdp: one assignment per packing point");
  if (eps_prime_ < 0.0 || eps_prime_ > 0.5)
    throw std::invalid_argument("HardInstanceCmdp: eps_prime must be in [0, 1/2]");

  layout_.bandit_states = assignments_.front().size();
  for (const auto& z : assignments_) {
    if (z.size() != layout_.bandit_states)
      throw std::invalid_argument("HardInstanceCmdp: ragged assignments");
    for (auto zi : z) {
      if (zi >= num_actions_)
        throw std::invalid_argument("HardInstanceCmdp: assignment index out of range");
    }
  }
  // the construction requires an 8*eps'-separated packing
  for (std::size_t i = 0; i < packing_points_.size(); ++i) {
    for (std::size_t j = i + 1; j < packing_points_.size(); ++j) {
      if (l2_distance(packing_points_[i], packing_points_[j]) <
          8.0 * eps_prime_ - 1e-12)
        throw std::invalid_argument(
            "HardInstanceCmdp: packing points closer than 8 * eps_prime");
    }
  }
}

HardInstanceCmdp HardInstanceCmdp::random_assignments(
    std::vector<Context> packing_points, std::size_t bandit_states, double eps_prime,
    std::size_t num_actions, std::size_t horizon, Rng& rng) {
  std::vector<std::vector<std::size_t>> assignments(packing_points.size());
  for (auto& z : assignments) {
    z.resize(bandit_states);
    for (auto& zi : z) zi = rng.uniform_index(num_actions);
  }
  return HardInstanceCmdp(std::move(packing_points), std::move(assignments),
                          eps_prime, num_actions, horizon);
}

double HardInstanceCmdp::packed_plus_probability(std::size_t j,
                                                 std::size_t bandit_state,
                                                 std::size_t a) const {
  if (a == 0) return 0.5 + eps_prime_ / 2.0;
  if (assignments_[j][bandit_state] == a) return 0.5 + eps_prime_;
  return 0.5;
}

double HardInstanceCmdp::transition_to_plus(const Context& c,
                                            std::size_t bandit_state,
                                            std::size_t a) const {
  double best = 0.5;
  for (std::size_t j = 0; j < packing_points_.size(); ++j) {
    const double d = l2_distance(c, packing_points_[j]);
    best = std::max(best, packed_plus_probability(j, bandit_state, a) - d / 2.0);
  }
  return best;
}

TabularMdp HardInstanceCmdp::instantiate(const Context& c) const {
  const std::size_t S = layout_.num_states();
  const std::size_t A = num_actions_;

  std::vector<double> plus_probs(layout_.bandit_states * A);
  for (std::size_t i = 0; i < layout_.bandit_states; ++i)
    for (std::size_t a = 0; a < A; ++a)
      plus_probs[i * A + a] = transition_to_plus(c, i, a);

  std::vector<double> transitions(S * A * S, 0.0);
  std::vector<double> rewards(S * A, 0.0);
  fill_hard_rows(transitions, rewards, layout_, A, plus_probs);

  std::vector<double> init(S, 0.0);
  init[layout_.start()] = 1.0;
  return TabularMdp(S, A, horizon_, std::move(transitions), std::move(rewards),
                    std::move(init));
}

}  // namespace cmdp
