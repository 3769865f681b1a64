#include "cmdp/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

#include "cmdp/cover_estimator.hpp"
#include "cmdp/hard_instance.hpp"
#include "cmdp/kwik_estimator.hpp"
#include "cmdp/packing.hpp"
#include "cmdp/planning.hpp"
#include "cmdp/random_mdp.hpp"
#include "cmdp/rmax_agent.hpp"

namespace cmdp::harness {

using nlohmann::ordered_json;

double SuboptimalCurve::rate(std::size_t begin, std::size_t end) const {
  if (end > cumulative.size()) end = cumulative.size();
  if (begin >= end) return 0.0;
  const std::size_t upto_end = cumulative[end - 1];
  const std::size_t upto_begin = begin == 0 ? 0 : cumulative[begin - 1];
  return static_cast<double>(upto_end - upto_begin) /
         static_cast<double>(end - begin);
}

std::size_t SuboptimalCurve::first_window_below(double threshold,
                                                std::size_t window) const {
  for (std::size_t end = window; end <= cumulative.size(); end += window) {
    if (rate(end - window, end) <= threshold) return end;
  }
  return cumulative.size() + 1;
}

SuboptimalCurve count_suboptimal(std::span<const EpisodeRecord> records, double eps) {
  SuboptimalCurve curve;
  curve.cumulative.reserve(records.size());
  for (const auto& r : records) {
    if (r.gap > eps) curve.count += 1;
    curve.cumulative.push_back(curve.count);
  }
  return curve;
}

ContextSequence build_context_sequence(const ExperimentConfig& cfg,
                                       const EnvModel& env) {
  const std::uint64_t seq_seed = Rng::derive_seed(cfg.seed, 1);
  const auto& mode = cfg.sequence.mode;

  if (mode == "iid") {
    if (env.simplex_contexts())
      return ContextSequence::iid_uniform_simplex(env.context_dim(), seq_seed);
    return ContextSequence::iid_uniform_box(env.box(), seq_seed);
  }
  if (mode == "cyclic") {
    std::vector<Context> points;
    if (const auto* packing = env.packing_points()) {
      points = *packing;  // the hard family cycles over its own packing
    } else if (env.simplex_contexts()) {
      // simplex corners: the tightest spanning set for a linear family
      for (std::size_t i = 0; i < env.context_dim(); ++i) {
        Context c;
        c.coords.assign(env.context_dim(), 0.0);
        c.coords[i] = 1.0;
        points.push_back(std::move(c));
      }
    } else {
      points = build_packing(env.box(), cfg.sequence.cyclic_radius).points;
    }
    return ContextSequence::cyclic_permutation(std::move(points), seq_seed);
  }

  std::vector<Context> points;
  if (mode == "list") {
    for (const auto& p : cfg.sequence.points) points.push_back(Context{p});
  } else {  // script
    for (const auto& jp : load_json_file(cfg.sequence.script_file))
      points.push_back(Context{jp.get<std::vector<double>>()});
  }
  if (points.empty()) throw ConfigError("context sequence has no points");
  for (const auto& p : points) {
    if (p.dim() != env.context_dim())
      throw ConfigError("scripted context dimension mismatch");
    if (env.simplex_contexts() && !on_simplex(p))
      throw ConfigError("scripted context off the simplex");
    if (!env.simplex_contexts() && !env.box().contains(p, 1e-9))
      throw ConfigError("scripted context outside the box");
  }
  return ContextSequence::fixed_list(std::move(points));
}

namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

struct AgentHandle {
  std::unique_ptr<RmaxAgent> rmax;  // cover / kwik
  bool oracle = false;
  bool random = false;
};

AgentHandle make_agent(const ExperimentConfig& cfg, const EnvModel& env,
                       ordered_json& constants) {
  const std::size_t S = env.num_states();
  const std::size_t A = env.num_actions();
  const std::size_t H = env.horizon();

  AgentHandle handle;
  if (cfg.agent.kind == "oracle") {
    handle.oracle = true;
    return handle;
  }
  if (cfg.agent.kind == "random") {
    handle.random = true;
    return handle;
  }

  AgentSpec spec{S, A, H, env.initial_dist()};
  if (cfg.agent.kind == "cover") {
    const double r0_theory = compute_r0(cfg.agent.eps, H, env.lip_p(), env.lip_r());
    const std::size_t m_theory = compute_m(cfg.agent.eps, cfg.agent.delta, S, A, H);
    const double r0 = cfg.agent.r0_override.value_or(r0_theory);
    const std::size_t m = cfg.agent.m_override.value_or(m_theory);
    constants["r0_theoretical"] = r0_theory;
    constants["m_theoretical"] = m_theory;
    constants["r0_effective"] = r0;
    constants["m_effective"] = m;
    handle.rmax = std::make_unique<RmaxAgent>(
        std::move(spec), std::make_unique<CoverEstimator>(S, A, r0, m));
    return handle;
  }

  // kwik
  const std::size_t d = env.context_dim();
  AlphaParams params{cfg.agent.b1, cfg.agent.b2, cfg.agent.eps, cfg.agent.delta,
                     d, S};
  const double alpha_theory = compute_alpha_s(params);
  const double alpha = cfg.agent.alpha_override.value_or(alpha_theory);
  constants["alpha_theoretical"] = alpha_theory;
  constants["alpha_effective"] = alpha;
  // don't-know-count scale d^2/eps^4 * max{d^2, S^2 log^2(d/delta)},
  // reported for scaling studies only.
  const double dd = static_cast<double>(d);
  const double log_term = std::log(dd / cfg.agent.delta);
  const double scale =
      dd * dd / std::pow(cfg.agent.eps, 4.0) *
      std::max(dd * dd, static_cast<double>(S * S) * log_term * log_term);
  constants["kwik_bot_count_scale"] = scale;
  const KwikNorm norm = cfg.agent.norm == "l1" ? KwikNorm::L1 : KwikNorm::L2;
  handle.rmax = std::make_unique<RmaxAgent>(
      std::move(spec), std::make_unique<KwikEstimator>(S, A, d, alpha, norm));
  return handle;
}

}  // namespace

std::string episode_record_line(const EpisodeRecord& r) {
  ordered_json j;
  j["t"] = r.t;
  j["context"] = r.context.coords;
  j["v_star"] = r.v_star;
  j["v_pi"] = r.v_pi;
  j["gap"] = r.gap;
  j["suboptimal"] = r.suboptimal;
  j["known_states"] = r.known_states;
  j["updates"] = r.updates;
  return j.dump();
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  EnvModel env = build_env_model(cfg.env);
  ContextSequence sequence = build_context_sequence(cfg, env);

  ordered_json constants;
  AgentHandle agent = make_agent(cfg, env, constants);
  if (env.family() == "hard" && env.horizon() >= 3 && cfg.agent.eps > 0.0) {
    // the construction's own gap constant, next to the effective override
    constants["eps_prime_theoretical"] = epsilon_prime(cfg.agent.eps, env.horizon());
    constants["eps_prime_effective"] = cfg.env.eps_prime;
  }

  Rng episode_rng(Rng::derive_seed(cfg.seed, 2));
  Rng policy_rng(Rng::derive_seed(cfg.seed, 3));

  const std::size_t S = env.num_states();
  const std::size_t A = env.num_actions();
  const std::size_t H = env.horizon();

  RunResult result;
  result.records.reserve(cfg.episodes);

  for (std::size_t t = 0; t < cfg.episodes; ++t) {
    const Context c = sequence.next();
    const TabularMdp mdp = env.instantiate(c);
    const PlanResult star = plan_optimal(mdp);

    EpisodeRecord record;
    record.t = t;
    record.context = c;
    record.v_star = star.value;

    if (agent.rmax) {
      auto episode = agent.rmax->run_episode(c, mdp, episode_rng);
      record.v_pi = evaluate_policy(mdp, episode.committed);
      record.known_states = episode.known_count;
      record.updates = agent.rmax->estimator().update_count();
    } else if (agent.oracle) {
      sample_episode(mdp, star.policy, episode_rng);  // an episode still elapses
      record.v_pi = star.value;
      record.known_states = S;
    } else {  // random
      auto policy = random_policy(H, S, A, policy_rng);
      sample_episode(mdp, policy, episode_rng);
      record.v_pi = evaluate_policy(mdp, policy);
    }

    record.gap = record.v_star - record.v_pi;
    if (record.gap < -1e-9)
      throw std::runtime_error("run_experiment: optimal value dominated (gap " +
                               std::to_string(record.gap) + ")");
    record.suboptimal = record.gap > cfg.agent.eps;
    result.records.push_back(std::move(record));
  }

  const auto curve = count_suboptimal(result.records, cfg.agent.eps);
  const std::size_t tail = std::max<std::size_t>(1, cfg.episodes / 20);

  ordered_json summary;
  summary["config"] = cfg.to_json();
  summary["env_family"] = env.family();
  summary["episodes"] = cfg.episodes;
  summary["suboptimal_count"] = curve.count;
  summary["suboptimal_rate"] = curve.rate(0, cfg.episodes);
  summary["first_window_rate"] = curve.rate(0, tail);
  summary["last_window_rate"] = curve.rate(cfg.episodes - tail, cfg.episodes);
  summary["constants"] = constants;
  result.summary = std::move(summary);

  if (!cfg.out_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    const fs::path dir(cfg.out_dir);

    std::ofstream jsonl(dir / "episodes.jsonl");
    for (const auto& r : result.records) jsonl << episode_record_line(r) << "\n";

    std::ofstream csv(dir / "summary.csv");
    csv << "t,gap,suboptimal,known_states,updates\n";
    for (const auto& r : result.records) {
      csv << r.t << "," << format_double(r.gap) << "," << (r.suboptimal ? 1 : 0)
          << "," << r.known_states << "," << r.updates << "\n";
    }

    write_json_file((dir / "summary.json").string(), result.summary);
    if (agent.rmax)
      write_json_file((dir / "checkpoint.json").string(),
                      agent.rmax->estimator().snapshot());
  }

  return result;
}

}  // namespace cmdp::harness
