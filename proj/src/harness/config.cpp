#include "cmdp/harness/config.hpp"

#include <fstream>

#include "cmdp/packing.hpp"
#include "cmdp/random_mdp.hpp"
#include "cmdp/rng.hpp"

namespace cmdp::harness {

using nlohmann::ordered_json;

namespace {

template <typename T>
void read_field(const ordered_json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) {
    try {
      out = it->get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
  }
}

template <typename T>
void read_optional(const ordered_json& j, const char* key, std::optional<T>& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) {
    try {
      out = it->get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const ordered_json& j) {
  ExperimentConfig cfg;
  if (auto it = j.find("env"); it != j.end()) {
    const auto& je = *it;
    read_field(je, "family", cfg.env.family);
    read_field(je, "context_dim", cfg.env.context_dim);
    read_field(je, "num_states", cfg.env.num_states);
    read_field(je, "num_actions", cfg.env.num_actions);
    read_field(je, "horizon", cfg.env.horizon);
    read_field(je, "lip_p", cfg.env.lip_p);
    read_field(je, "lip_r", cfg.env.lip_r);
    read_field(je, "concentration", cfg.env.concentration);
    read_field(je, "bandit_states", cfg.env.bandit_states);
    read_field(je, "eps_prime", cfg.env.eps_prime);
    read_field(je, "box_lo", cfg.env.box_lo);
    read_field(je, "box_hi", cfg.env.box_hi);
    read_field(je, "seed", cfg.env.seed);
    read_field(je, "spec_file", cfg.env.spec_file);
  }
  if (auto it = j.find("agent"); it != j.end()) {
    const auto& ja = *it;
    read_field(ja, "kind", cfg.agent.kind);
    read_field(ja, "eps", cfg.agent.eps);
    read_field(ja, "delta", cfg.agent.delta);
    read_optional(ja, "r0", cfg.agent.r0_override);
    read_optional(ja, "m", cfg.agent.m_override);
    read_optional(ja, "alpha", cfg.agent.alpha_override);
    read_field(ja, "b1", cfg.agent.b1);
    read_field(ja, "b2", cfg.agent.b2);
    read_field(ja, "norm", cfg.agent.norm);
  }
  if (auto it = j.find("sequence"); it != j.end()) {
    const auto& js = *it;
    read_field(js, "mode", cfg.sequence.mode);
    read_field(js, "radius", cfg.sequence.cyclic_radius);
    read_field(js, "points", cfg.sequence.points);
    read_field(js, "script_file", cfg.sequence.script_file);
  }
  read_field(j, "episodes", cfg.episodes);
  read_field(j, "seed", cfg.seed);
  read_field(j, "out", cfg.out_dir);
  cfg.validate();
  return cfg;
}

ordered_json ExperimentConfig::to_json() const {
  ordered_json j;
  auto& je = j["env"];
  je["family"] = env.family;
  je["context_dim"] = env.context_dim;
  je["num_states"] = env.num_states;
  je["num_actions"] = env.num_actions;
  je["horizon"] = env.horizon;
  je["lip_p"] = env.lip_p;
  je["lip_r"] = env.lip_r;
  je["concentration"] = env.concentration;
  je["bandit_states"] = env.bandit_states;
  je["eps_prime"] = env.eps_prime;
  je["box_lo"] = env.box_lo;
  je["box_hi"] = env.box_hi;
  je["seed"] = env.seed;
  if (!env.spec_file.empty()) je["spec_file"] = env.spec_file;
  auto& ja = j["agent"];
  ja["kind"] = agent.kind;
  ja["eps"] = agent.eps;
  ja["delta"] = agent.delta;
  if (agent.r0_override) ja["r0"] = *agent.r0_override;
  if (agent.m_override) ja["m"] = *agent.m_override;
  if (agent.alpha_override) ja["alpha"] = *agent.alpha_override;
  ja["b1"] = agent.b1;
  ja["b2"] = agent.b2;
  ja["norm"] = agent.norm;
  auto& js = j["sequence"];
  js["mode"] = sequence.mode;
  js["radius"] = sequence.cyclic_radius;
  if (!sequence.points.empty()) js["points"] = sequence.points;
  if (!sequence.script_file.empty()) js["script_file"] = sequence.script_file;
  j["episodes"] = episodes;
  j["seed"] = seed;
  if (!out_dir.empty()) j["out"] = out_dir;
  return j;
}

void ExperimentConfig::validate() const {
  if (env.family != "smooth" && env.family != "linear" && env.family != "hard")
    throw ConfigError("env.family must be smooth, linear or hard");
  if (agent.kind != "cover" && agent.kind != "kwik" && agent.kind != "oracle" &&
      agent.kind != "random")
    throw ConfigError("agent.kind must be cover, kwik, oracle or random");
  if (sequence.mode != "cyclic" && sequence.mode != "iid" &&
      sequence.mode != "list" && sequence.mode != "script")
    throw ConfigError("sequence.mode must be cyclic, iid, list or script");
  if (agent.norm != "l2" && agent.norm != "l1")
    throw ConfigError("agent.norm must be l2 or l1");

  if (env.spec_file.empty()) {
    if (env.context_dim == 0) throw ConfigError("env.context_dim must be positive");
    if (env.num_states == 0 || env.num_actions == 0 || env.horizon == 0)
      throw ConfigError("env shape values must be positive");
    if (env.family == "hard") {
      if (env.bandit_states == 0)
        throw ConfigError("env.bandit_states must be positive");
      if (env.eps_prime <= 0.0 || env.eps_prime > 0.5)
        throw ConfigError("env.eps_prime must be in (0, 1/2]");
    }
    if (env.family == "smooth" && (env.lip_p < 0.0 || env.lip_r < 0.0))
      throw ConfigError("env Lipschitz constants must be nonnegative");
    if (env.box_hi <= env.box_lo) throw ConfigError("env box is degenerate");
  }

  if (agent.kind == "cover" || agent.kind == "kwik") {
    if (agent.eps <= 0.0 || agent.eps >= 1.0)
      throw ConfigError("agent.eps must be in (0, 1)");
    if (agent.delta <= 0.0 || agent.delta >= 1.0)
      throw ConfigError("agent.delta must be in (0, 1)");
  }
  if (agent.r0_override && *agent.r0_override <= 0.0)
    throw ConfigError("agent.r0 override must be positive");
  if (agent.m_override && *agent.m_override == 0)
    throw ConfigError("agent.m override must be positive");
  if (agent.alpha_override && *agent.alpha_override <= 0.0)
    throw ConfigError("agent.alpha override must be positive");
  if (agent.b1 <= 0.0 || agent.b2 <= 0.0)
    throw ConfigError("agent.b1 and agent.b2 must be positive");

  if (sequence.mode == "cyclic" && sequence.cyclic_radius <= 0.0)
    throw ConfigError("sequence.radius must be positive");
  if (sequence.mode == "list" && sequence.points.empty())
    throw ConfigError("sequence.points must be nonempty in list mode");
  if (sequence.mode == "script" && sequence.script_file.empty())
    throw ConfigError("sequence.script_file required in script mode");
  if (episodes == 0) throw ConfigError("episodes must be positive");
}

void apply_override(ordered_json& config, const std::string& key_value) {
  const auto eq = key_value.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override must look like path.to.key=value");
  const std::string path = key_value.substr(0, eq);
  const std::string raw = key_value.substr(eq + 1);

  ordered_json value;
  try {
    value = ordered_json::parse(raw);
  } catch (const nlohmann::json::exception&) {
    value = raw;  // unquoted strings pass through
  }

  ordered_json* node = &config;
  std::size_t start = 0;
  for (;;) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) throw ConfigError("override path has an empty segment");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

EnvModel build_env_model(const EnvironmentConfig& cfg) {
  if (!cfg.spec_file.empty()) return EnvModel::from_json(load_json_file(cfg.spec_file));

  BoxSpace space{cfg.context_dim, cfg.box_lo, cfg.box_hi};
  if (cfg.family == "smooth") {
    return EnvModel::smooth(make_interpolated_smooth_cmdp(
        space, cfg.num_states, cfg.num_actions, cfg.horizon, cfg.lip_p, cfg.lip_r,
        cfg.seed, cfg.concentration));
  }
  if (cfg.family == "linear") {
    Rng rng(Rng::derive_seed(cfg.seed, 0x11e4));
    auto init = rng.sample_dirichlet(cfg.num_states, 1.0);
    std::vector<TabularMdp> bases;
    bases.reserve(cfg.context_dim);
    for (std::size_t i = 0; i < cfg.context_dim; ++i)
      bases.push_back(random_mdp_with_init(cfg.num_states, cfg.num_actions,
                                           cfg.horizon, init, rng,
                                           cfg.concentration));
    return EnvModel::linear(LinearCmdp(std::move(bases)));
  }
  // hard: packing at the construction radius 8 * eps'
  auto packing = build_packing(space, 8.0 * cfg.eps_prime);
  Rng rng(Rng::derive_seed(cfg.seed, 0xad7e));
  auto cmdp = HardInstanceCmdp::random_assignments(std::move(packing.points),
                                                   cfg.bandit_states, cfg.eps_prime,
                                                   cfg.num_actions, cfg.horizon, rng);
  return EnvModel::hard(std::move(cmdp), space);
}

ordered_json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace cmdp::harness
