#include "cmdp/planning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cmdp {

namespace {

void check_shapes(const TabularMdp& mdp, const NonstationaryPolicy& policy) {
  if (policy.horizon() != mdp.horizon() || policy.num_states() != mdp.num_states())
    throw std::invalid_argument("policy shape does not match MDP");
  for (std::size_t i = 0; i < policy.table().size(); ++i) {
    if (policy.table()[i] >= mdp.num_actions())
      throw std::invalid_argument("policy action index out of range");
  }
}

}  // namespace

PlanResult plan_optimal(const TabularMdp& mdp) {
  const std::size_t S = mdp.num_states();
  const std::size_t A = mdp.num_actions();
  const std::size_t H = mdp.horizon();

  NonstationaryPolicy policy(H, S);
  std::vector<double> next(S, 0.0);  // V_{h+1}, unnormalized
  std::vector<double> cur(S, 0.0);

  for (std::size_t h = H; h-- > 0;) {
    for (std::size_t s = 0; s < S; ++s) {
      double best = -1.0;
      std::size_t best_a = 0;
      for (std::size_t a = 0; a < A; ++a) {
        auto row = mdp.transition_row(s, a);
        double q = mdp.reward(s, a);
        for (std::size_t s2 = 0; s2 < S; ++s2) q += row[s2] * next[s2];
        if (q > best) {  // strict: ties keep the lowest action index
          best = q;
          best_a = a;
        }
      }
      cur[s] = best;
      policy.set_action(h, s, best_a);
    }
    std::swap(cur, next);
  }

  PlanResult result{std::move(policy), 0.0, std::move(next)};
  for (auto& v : result.state_values) v /= static_cast<double>(H);
  const auto& mu = mdp.initial_dist();
  for (std::size_t s = 0; s < S; ++s) result.value += mu[s] * result.state_values[s];
  return result;
}

double evaluate_policy(const TabularMdp& mdp, const NonstationaryPolicy& policy) {
  check_shapes(mdp, policy);
  const std::size_t S = mdp.num_states();
  const std::size_t H = mdp.horizon();

  std::vector<double> occ = mdp.initial_dist();
  std::vector<double> next(S, 0.0);
  double total = 0.0;
  for (std::size_t h = 0; h < H; ++h) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t s = 0; s < S; ++s) {
      if (occ[s] == 0.0) continue;
      const std::size_t a = policy.action(h, s);
      total += occ[s] * mdp.reward(s, a);
      auto row = mdp.transition_row(s, a);
      for (std::size_t s2 = 0; s2 < S; ++s2) next[s2] += occ[s] * row[s2];
    }
    std::swap(occ, next);
  }
  return total / static_cast<double>(H);
}

std::vector<double> policy_state_values(const TabularMdp& mdp,
                                        const NonstationaryPolicy& policy) {
  check_shapes(mdp, policy);
  const std::size_t S = mdp.num_states();
  const std::size_t H = mdp.horizon();

  std::vector<double> next(S, 0.0);
  std::vector<double> cur(S, 0.0);
  for (std::size_t h = H; h-- > 0;) {
    for (std::size_t s = 0; s < S; ++s) {
      const std::size_t a = policy.action(h, s);
      auto row = mdp.transition_row(s, a);
      double v = mdp.reward(s, a);
      for (std::size_t s2 = 0; s2 < S; ++s2) v += row[s2] * next[s2];
      cur[s] = v;
    }
    std::swap(cur, next);
  }
  for (auto& v : next) v /= static_cast<double>(H);
  return next;
}

std::vector<std::vector<double>> occupancy(const TabularMdp& mdp,
                                           const NonstationaryPolicy& policy) {
  check_shapes(mdp, policy);
  const std::size_t S = mdp.num_states();
  const std::size_t H = mdp.horizon();

  std::vector<std::vector<double>> occ(H + 1, std::vector<double>(S, 0.0));
  occ[0] = mdp.initial_dist();
  for (std::size_t h = 0; h < H; ++h) {
    for (std::size_t s = 0; s < S; ++s) {
      if (occ[h][s] == 0.0) continue;
      auto row = mdp.transition_row(s, policy.action(h, s));
      for (std::size_t s2 = 0; s2 < S; ++s2) occ[h + 1][s2] += occ[h][s] * row[s2];
    }
  }
  return occ;
}

double brute_force_value(const TabularMdp& mdp, const NonstationaryPolicy& policy) {
  check_shapes(mdp, policy);
  const std::size_t S = mdp.num_states();
  const std::size_t H = mdp.horizon();

  double count = 1.0;
  for (std::size_t h = 0; h < H; ++h) {
    count *= static_cast<double>(S);
    if (count > 1e6)
      throw std::invalid_argument("brute_force_value: S^H exceeds the 1e6 guard");
  }

  // odometer over state sequences (s_0, ..., s_{H-1})
  std::vector<std::size_t> seq(H, 0);
  double value = 0.0;
  for (;;) {
    double prob = mdp.initial_dist()[seq[0]];
    double reward_sum = 0.0;
    for (std::size_t h = 0; h < H && prob > 0.0; ++h) {
      const std::size_t a = policy.action(h, seq[h]);
      reward_sum += mdp.reward(seq[h], a);
      if (h + 1 < H) prob *= mdp.transition(seq[h], a, seq[h + 1]);
    }
    if (prob > 0.0) value += prob * reward_sum / static_cast<double>(H);

    std::size_t i = H;
    while (i-- > 0) {
      if (++seq[i] < S) break;
      seq[i] = 0;
      if (i == 0) return value;
    }
  }
}

TabularMdp induced_mdp(const TabularMdp& mdp, const std::vector<bool>& known) {
  if (known.size() != mdp.num_states())
    throw std::invalid_argument("induced_mdp: known-set size mismatch");
  const std::size_t S = mdp.num_states();
  const std::size_t A = mdp.num_actions();

  std::vector<double> transitions = mdp.transitions();
  std::vector<double> rewards = mdp.rewards();
  for (std::size_t s = 0; s < S; ++s) {
    if (known[s]) continue;
    for (std::size_t a = 0; a < A; ++a) {
      auto row = transitions.begin() + (s * A + a) * S;
      std::fill(row, row + S, 0.0);
      row[s] = 1.0;
      rewards[s * A + a] = 1.0;
    }
  }
  return TabularMdp(S, A, mdp.horizon(), std::move(transitions), std::move(rewards),
                    mdp.initial_dist());
}

std::vector<double> escape_probability_by_start(const TabularMdp& mdp,
                                                const NonstationaryPolicy& policy,
                                                const std::vector<bool>& known) {
  check_shapes(mdp, policy);
  if (known.size() != mdp.num_states())
    throw std::invalid_argument("escape_probability: known-set size mismatch");
  const std::size_t S = mdp.num_states();
  const std::size_t H = mdp.horizon();

  // q_h(s): probability of visiting an unknown state at some step in
  // {h, ..., H-1} given s_h = s. Unknown states count immediately.
  std::vector<double> next(S, 0.0);
  std::vector<double> cur(S, 0.0);
  for (std::size_t h = H; h-- > 0;) {
    for (std::size_t s = 0; s < S; ++s) {
      if (!known[s]) {
        cur[s] = 1.0;
        continue;
      }
      auto row = mdp.transition_row(s, policy.action(h, s));
      double q = 0.0;
      for (std::size_t s2 = 0; s2 < S; ++s2) q += row[s2] * next[s2];
      cur[s] = q;
    }
    std::swap(cur, next);
  }
  return next;
}

double escape_probability(const TabularMdp& mdp, const NonstationaryPolicy& policy,
                          const std::vector<bool>& known) {
  auto by_start = escape_probability_by_start(mdp, policy, known);
  const auto& mu = mdp.initial_dist();
  double p = 0.0;
  for (std::size_t s = 0; s < mdp.num_states(); ++s) p += mu[s] * by_start[s];
  return p;
}

EpisodeTrace sample_episode(const TabularMdp& mdp, const ActionSource& actions,
                            Rng& rng) {
  const std::size_t H = mdp.horizon();
  EpisodeTrace trace;
  trace.states.reserve(H + 1);
  trace.actions.reserve(H);
  trace.rewards.reserve(H);

  std::size_t s = rng.sample_discrete(mdp.initial_dist());
  trace.states.push_back(s);
  for (std::size_t h = 0; h < H; ++h) {
    const std::size_t a = actions(h, s);
    if (a >= mdp.num_actions())
      throw std::invalid_argument("sample_episode: action index out of range");
    trace.actions.push_back(a);
    trace.rewards.push_back(mdp.reward(s, a));
    auto row = mdp.transition_row(s, a);
    s = rng.sample_discrete(row.data(), row.size());
    trace.states.push_back(s);
  }
  return trace;
}

EpisodeTrace sample_episode(const TabularMdp& mdp, const NonstationaryPolicy& policy,
                            Rng& rng) {
  check_shapes(mdp, policy);
  return sample_episode(
      mdp, [&policy](std::size_t h, std::size_t s) { return policy.action(h, s); },
      rng);
}

}  // namespace cmdp
