#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "cmdp/estimator.hpp"
#include "cmdp/planning.hpp"
#include "cmdp/tabular_mdp.hpp"

namespace cmdp {

/// Optimistic model for one context: estimator predictions on known states,
/// self-loops with maximal reward on unknown ones.
struct InducedModel {
  TabularMdp mdp;
  std::vector<bool> known;  // per state
  std::size_t known_count = 0;
};

/// Balanced-wandering attempt counters, kept per estimator scope (per
/// context ball for the cover estimator, one global scope for KWIK).
class VisitCounters {
 public:
  VisitCounters(std::size_t num_states, std::size_t num_actions)
      : num_states_(num_states), num_actions_(num_actions) {}

  std::size_t count(std::size_t scope, std::size_t s, std::size_t a) const {
    auto it = scopes_.find(scope);
    if (it == scopes_.end()) return 0;
    return it->second[s * num_actions_ + a];
  }

  void increment(std::size_t scope, std::size_t s, std::size_t a) {
    auto it = scopes_.find(scope);
    if (it == scopes_.end()) {
      it = scopes_.emplace(scope, std::vector<std::size_t>(num_states_ * num_actions_, 0))
               .first;
    }
    it->second[s * num_actions_ + a] += 1;
  }

 private:
  std::size_t num_states_;
  std::size_t num_actions_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> scopes_;
};

/// Shape of the environment the agent explores. The initial distribution is
/// context-independent and known to the agent.
struct AgentSpec {
  std::size_t num_states = 0;
  std::size_t num_actions = 0;
  std::size_t horizon = 0;
  std::vector<double> initial_dist;
};

/// Shared exploration template. Each episode: query the estimator for every
/// (s, a) under the received context, form the known set K and the induced
/// MDP (unknown states become absorbing with reward 1), plan once, then act
/// -- following the plan on known states and balanced wandering (the
/// least-attempted still-unknown action) elsewhere, feeding observed
/// transitions back through the estimator's gated update.
class RmaxAgent {
 public:
  RmaxAgent(AgentSpec spec, std::unique_ptr<Estimator> estimator);

  /// Known set and optimistic induced MDP for context c. A state is known
  /// iff the estimator returns a prediction for every action. Predicted
  /// transition rows are legalized by simplex projection and rewards
  /// clipped to [0, 1] before entering the model.
  InducedModel build_induced(const Context& c) const;

  struct EpisodeResult {
    EpisodeTrace trace;
    /// The deterministic policy committed to at episode start: the induced
    /// MDP's optimal policy on known states, the frozen least-attempted
    /// unknown action elsewhere. This is the policy evaluated for
    /// optimality gaps.
    NonstationaryPolicy committed;
    std::vector<bool> known;
    std::size_t known_count = 0;
  };

  /// Runs one live episode against the true MDP for this context.
  EpisodeResult run_episode(const Context& c, const TabularMdp& env_mdp, Rng& rng);

  Estimator& estimator() { return *estimator_; }
  const Estimator& estimator() const { return *estimator_; }
  const AgentSpec& spec() const { return spec_; }
  const VisitCounters& counters() const { return counters_; }

 private:
  /// Least-attempted action among those still unknown at (c, s); ties go to
  /// the lowest index. Falls back to the planned action when every action
  /// is individually known (possible transiently across contexts for KWIK).
  std::size_t wander_action(const Context& c, std::size_t scope, std::size_t s,
                            const NonstationaryPolicy& plan, std::size_t h) const;

  AgentSpec spec_;
  std::unique_ptr<Estimator> estimator_;
  VisitCounters counters_;
};

}  // namespace cmdp
