#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmdp/harness/environment.hpp"

namespace cmdp::harness {

/// Invalid configuration; the CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnvironmentConfig {
  std::string family = "smooth";  // smooth | linear | hard
  std::size_t context_dim = 1;
  std::size_t num_states = 5;      // smooth/linear; the hard family uses n + 3
  std::size_t num_actions = 2;
  std::size_t horizon = 5;
  double lip_p = 1.0;              // smooth
  double lip_r = 1.0;              // smooth
  double concentration = 0.3;      // smooth anchor row peakiness
  std::size_t bandit_states = 1;   // hard: n
  double eps_prime = 0.1;          // hard gap (practical override; see epsilon_prime)
  double box_lo = 0.0;
  double box_hi = 1.0;
  std::uint64_t seed = 1;          // family construction seed
  std::string spec_file;           // when set, load a resolved spec instead
};

struct AgentConfig {
  std::string kind = "cover";  // cover | kwik | oracle | random
  double eps = 0.1;
  double delta = 0.1;
  std::optional<double> r0_override;
  std::optional<std::size_t> m_override;
  std::optional<double> alpha_override;
  double b1 = 1.0;
  double b2 = 1.0;
  std::string norm = "l2";  // l2 | l1 knownness test
};

struct SequenceConfig {
  std::string mode = "iid";   // cyclic | iid | list | script
  double cyclic_radius = 0.1; // packing radius for cyclic over a box space
  std::vector<std::vector<double>> points;  // list mode
  std::string script_file;                  // script mode: JSON array of contexts
};

struct ExperimentConfig {
  EnvironmentConfig env;
  AgentConfig agent;
  SequenceConfig sequence;
  std::size_t episodes = 1000;
  std::uint64_t seed = 0;
  std::string out_dir;  // empty: keep results in memory only

  static ExperimentConfig from_json(const nlohmann::ordered_json& j);
  nlohmann::ordered_json to_json() const;

  /// Shape and range checks shared by every entry point.
  void validate() const;
};

/// Applies a `path=value` override (dotted path, value parsed as JSON when
/// possible, else taken as a string) onto a raw config document.
void apply_override(nlohmann::ordered_json& config, const std::string& key_value);

/// Builds the resolved environment for a config (loads spec_file when set).
EnvModel build_env_model(const EnvironmentConfig& cfg);

nlohmann::ordered_json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::ordered_json& j);

}  // namespace cmdp::harness
