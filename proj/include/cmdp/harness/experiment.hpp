#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmdp/context.hpp"
#include "cmdp/context_sequence.hpp"
#include "cmdp/harness/config.hpp"
#include "cmdp/harness/environment.hpp"

namespace cmdp::harness {

/// One line of the online protocol: exact optimal value for the episode's
/// context, exact value of the policy the agent committed to, and the gap
/// between them.
struct EpisodeRecord {
  std::size_t t = 0;
  Context context;
  double v_star = 0.0;
  double v_pi = 0.0;
  double gap = 0.0;
  bool suboptimal = false;
  std::size_t known_states = 0;
  std::size_t updates = 0;  // cumulative estimator updates
};

/// Count of non-eps-optimal episodes plus the running curve used for trend
/// assertions.
struct SuboptimalCurve {
  std::size_t count = 0;
  std::vector<std::size_t> cumulative;  // per episode

  /// Suboptimal rate over episodes [begin, end).
  double rate(std::size_t begin, std::size_t end) const;

  /// End index of the first `window`-sized chunk whose rate is <= threshold;
  /// one past the last episode when no chunk qualifies.
  std::size_t first_window_below(double threshold, std::size_t window) const;
};

SuboptimalCurve count_suboptimal(std::span<const EpisodeRecord> records, double eps);

struct RunResult {
  std::vector<EpisodeRecord> records;
  nlohmann::ordered_json summary;
};

/// Executes the online protocol for `cfg.episodes` episodes: observe the
/// context, let the agent commit a policy, evaluate it exactly against the
/// context's true MDP, then experience the episode (updating the agent).
/// When cfg.out_dir is set, writes episodes.jsonl, summary.csv, summary.json
/// and (for learning agents) checkpoint.json into it.
RunResult run_experiment(const ExperimentConfig& cfg);

/// The context stream a config describes.
ContextSequence build_context_sequence(const ExperimentConfig& cfg,
                                       const EnvModel& env);

/// JSONL line for a record; the byte-identical determinism contract is over
/// these lines.
std::string episode_record_line(const EpisodeRecord& record);

}  // namespace cmdp::harness
