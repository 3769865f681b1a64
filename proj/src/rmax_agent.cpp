#include "cmdp/rmax_agent.hpp"

#include <algorithm>
#include <stdexcept>

#include "cmdp/simplex.hpp"

namespace cmdp {

RmaxAgent::RmaxAgent(AgentSpec spec, std::unique_ptr<Estimator> estimator)
    : spec_(std::move(spec)),
      estimator_(std::move(estimator)),
      counters_(spec_.num_states, spec_.num_actions) {
  if (!estimator_) throw std::invalid_argument("RmaxAgent: missing estimator");
  if (spec_.initial_dist.size() != spec_.num_states)
    throw std::invalid_argument("RmaxAgent: initial distribution size mismatch");
}

InducedModel RmaxAgent::build_induced(const Context& c) const {
  const std::size_t S = spec_.num_states;
  const std::size_t A = spec_.num_actions;

  std::vector<bool> known(S, true);
  std::vector<double> transitions(S * A * S, 0.0);
  std::vector<double> rewards(S * A, 0.0);

  for (std::size_t s = 0; s < S; ++s) {
    std::vector<Prediction> preds(A);
    for (std::size_t a = 0; a < A; ++a) {
      auto p = estimator_->predict(c, s, a);
      if (!p) {
        known[s] = false;
        break;
      }
      preds[a] = std::move(*p);
    }
    if (known[s]) {
      for (std::size_t a = 0; a < A; ++a) {
        auto row = project_simplex(preds[a].transition);
        std::copy(row.begin(), row.end(),
                  transitions.begin() + (s * A + a) * S);
        rewards[s * A + a] = std::min(1.0, std::max(0.0, preds[a].reward));
      }
    } else {
      for (std::size_t a = 0; a < A; ++a) {
        transitions[(s * A + a) * S + s] = 1.0;  // absorbing
        rewards[s * A + a] = 1.0;                // maximal reward
      }
    }
  }

  InducedModel model{TabularMdp(S, A, spec_.horizon, std::move(transitions),
                                std::move(rewards), spec_.initial_dist),
                     std::move(known), 0};
  model.known_count = static_cast<std::size_t>(
      std::count(model.known.begin(), model.known.end(), true));
  return model;
}

std::size_t RmaxAgent::wander_action(const Context& c, std::size_t scope,
                                     std::size_t s, const NonstationaryPolicy& plan,
                                     std::size_t h) const {
  std::size_t best_a = spec_.num_actions;  // sentinel
  std::size_t best_count = 0;
  for (std::size_t a = 0; a < spec_.num_actions; ++a) {
    if (estimator_->predict(c, s, a)) continue;  // only unknown actions wander
    const std::size_t n = counters_.count(scope, s, a);
    if (best_a == spec_.num_actions || n < best_count) {
      best_a = a;
      best_count = n;
    }
  }
  if (best_a == spec_.num_actions) return plan.action(h, s);
  return best_a;
}

RmaxAgent::EpisodeResult RmaxAgent::run_episode(const Context& c,
                                                const TabularMdp& env_mdp,
                                                Rng& rng) {
  if (env_mdp.num_states() != spec_.num_states ||
      env_mdp.num_actions() != spec_.num_actions ||
      env_mdp.horizon() != spec_.horizon)
    throw std::invalid_argument("RmaxAgent: environment shape mismatch");

  const std::size_t S = spec_.num_states;
  const std::size_t H = spec_.horizon;

  const std::size_t scope = estimator_->wander_scope(c);
  InducedModel induced = build_induced(c);
  PlanResult plan = plan_optimal(induced.mdp);  // the one planning pass per episode

  // Freeze the committed policy before any within-episode update can move
  // counters or flip knownness. Unknown states pin the least-attempted
  // unknown action; if no action is unknown the plan's action stands.
  NonstationaryPolicy committed = plan.policy;
  for (std::size_t s = 0; s < S; ++s) {
    if (induced.known[s]) continue;
    bool has_unknown_action = false;
    for (std::size_t a = 0; a < spec_.num_actions && !has_unknown_action; ++a)
      has_unknown_action = !estimator_->predict(c, s, a).has_value();
    if (!has_unknown_action) continue;
    const std::size_t a = wander_action(c, scope, s, plan.policy, 0);
    for (std::size_t h = 0; h < H; ++h) committed.set_action(h, s, a);
  }

  EpisodeTrace trace;
  trace.states.reserve(H + 1);
  trace.actions.reserve(H);
  trace.rewards.reserve(H);

  std::size_t s = rng.sample_discrete(env_mdp.initial_dist());
  trace.states.push_back(s);
  for (std::size_t h = 0; h < H; ++h) {
    std::size_t a;
    bool wandering = !induced.known[s];
    if (wandering) {
      a = wander_action(c, scope, s, plan.policy, h);
      counters_.increment(scope, s, a);
    } else {
      a = plan.policy.action(h, s);
    }

    const double r = env_mdp.reward(s, a);
    auto row = env_mdp.transition_row(s, a);
    const std::size_t s_next = rng.sample_discrete(row.data(), row.size());

    if (wandering) estimator_->update(c, s, a, s_next, r);

    trace.actions.push_back(a);
    trace.rewards.push_back(r);
    trace.states.push_back(s_next);
    s = s_next;
  }

  return EpisodeResult{std::move(trace), std::move(committed),
                       std::move(induced.known), induced.known_count};
}

}  // namespace cmdp
