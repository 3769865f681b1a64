#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <json.hpp>

#include "cmdp/context.hpp"

namespace cmdp {

/// Model estimate for one (s, a) under a given context. The transition row
/// is the estimator's raw output; planners legalize it (simplex projection)
/// before use.
struct Prediction {
  std::vector<double> transition;
  double reward = 0.0;
};

/// Initialize / Predict / Update contract shared by the exploration
/// estimators. predict is pure; update mutates state only under the
/// concrete estimator's own gating rule, so callers may invoke it
/// unconditionally on observed transitions.
class Estimator {
 public:
  virtual ~Estimator() = default;

  /// Estimate for (c, s, a), or nullopt when the pair is unknown under c.
  virtual std::optional<Prediction> predict(const Context& c, std::size_t s,
                                            std::size_t a) const = 0;

  virtual void update(const Context& c, std::size_t s, std::size_t a,
                      std::size_t s_next, double reward) = 0;

  /// Scope key for balanced-wandering counters: the context's ball for the
  /// cover estimator (allocated on first contact), 0 for global learners.
  virtual std::size_t wander_scope(const Context& c) = 0;

  /// Total updates accepted by the gate so far.
  virtual std::size_t update_count() const = 0;

  /// Checkpoint snapshot in the harness format.
  virtual nlohmann::ordered_json snapshot() const = 0;
};

}  // namespace cmdp
