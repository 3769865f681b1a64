#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cmdp::harness {

/// Outcome of one oracle battery.
struct CheckResult {
  std::string suite;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string detail;
  bool passed() const { return failures == 0; }
};

/// Exact-DP batteries for the model-approximation facts the agents rely on.
CheckResult verify_simulation_lemma(std::uint64_t seed, std::size_t constructions = 200);
CheckResult verify_induced_inequalities(std::uint64_t seed,
                                        std::size_t constructions = 200);
CheckResult verify_escape_bound(std::uint64_t seed, std::size_t constructions = 200);

/// Lipschitz continuity of the adversarial hard family (constant 1).
CheckResult verify_hard_smoothness(std::uint64_t seed, std::size_t pairs = 10000);

/// Pooled-ball estimation accuracy at the threshold visit count, run at a
/// relaxed accuracy target so the implied m stays desk-scale.
CheckResult verify_cover_approximation(std::uint64_t seed,
                                       std::size_t replications = 120);

/// Separation and greedy-maximality certificates for built packings.
CheckResult verify_packings(std::uint64_t seed);

/// Raw-prediction l1 accuracy of the vector-label linear learner on a
/// linear family with known ground truth, at an explicit knownness
/// threshold.
struct KwikAccuracyReport {
  std::size_t seeds = 0;
  std::size_t seeds_with_violation = 0;
  std::size_t total_predictions = 0;
  std::size_t total_known = 0;
  std::size_t total_violations = 0;
  double max_l1_error = 0.0;
};
KwikAccuracyReport kwik_accuracy_battery(std::size_t dim, std::size_t num_states,
                                         std::size_t num_actions, std::size_t seeds,
                                         std::size_t predict_calls, double eps,
                                         double alpha, std::uint64_t seed_base);
CheckResult verify_kwik_accuracy(std::uint64_t seed);

std::vector<std::string> verify_suite_names();

/// Runs one named suite, or all of them for "all".
std::vector<CheckResult> run_verify(const std::string& name, std::uint64_t seed);

}  // namespace cmdp::harness
