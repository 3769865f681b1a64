// Command-line harness for the contextual-MDP exploration library.
//
// Subcommands:
//   run      execute one experiment from a JSON config
//   sweep    grid of experiments over config overrides, run in parallel
//   verify   exact-oracle invariant suites; nonzero exit on any failure
//   gen-env  materialize an environment spec (anchors/bases/packing resolved)
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmdp/harness/config.hpp"
#include "cmdp/harness/experiment.hpp"
#include "cmdp/harness/sweep.hpp"
#include "cmdp/harness/verify.hpp"

namespace {

using cmdp::harness::ConfigError;
using nlohmann::ordered_json;

ordered_json load_config_with_overrides(const std::string& path,
                                        const std::vector<std::string>& overrides) {
  ordered_json doc =
      path.empty() ? ordered_json::object() : cmdp::harness::load_json_file(path);
  for (const auto& kv : overrides) cmdp::harness::apply_override(doc, kv);
  return doc;
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides,
            std::optional<std::uint64_t> seed, const std::string& out) {
  ordered_json doc = load_config_with_overrides(config_path, overrides);
  if (seed) doc["seed"] = *seed;
  if (!out.empty()) doc["out"] = out;
  auto cfg = cmdp::harness::ExperimentConfig::from_json(doc);
  auto result = cmdp::harness::run_experiment(cfg);
  std::cout << result.summary.dump(2) << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path,
              const std::vector<std::string>& overrides, const std::string& out,
              std::size_t threads) {
  ordered_json doc = load_config_with_overrides(config_path, overrides);
  auto summary = cmdp::harness::run_sweep(doc, out, threads);
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  auto results = cmdp::harness::run_verify(suite, seed);
  bool all_passed = true;
  for (const auto& r : results) {
    std::cout << (r.passed() ? "[PASS] " : "[FAIL] ") << r.suite << ": "
              << (r.checks - r.failures) << "/" << r.checks << " checks";
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << "\n";
    all_passed = all_passed && r.passed();
  }
  return all_passed ? 0 : 1;
}

int cmd_gen_env(const std::string& config_path,
                const std::vector<std::string>& overrides, const std::string& out) {
  ordered_json doc = load_config_with_overrides(config_path, overrides);
  auto cfg = cmdp::harness::ExperimentConfig::from_json(doc);
  auto env = cmdp::harness::build_env_model(cfg.env);
  auto spec = env.to_json();
  if (out.empty()) {
    std::cout << spec.dump(2) << "\n";
  } else {
    cmdp::harness::write_json_file(out, spec);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PAC exploration harness for contextual MDPs"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::uint64_t verify_seed = 0;
  std::string suite = "all";
  std::size_t threads = 0;

  auto* run = app.add_subcommand("run", "run one experiment");
  run->add_option("--config", config_path, "experiment config (JSON)");
  run->add_option("--seed", seed, "override the run seed");
  run->add_option("--out", out, "output directory");
  run->add_option("--override", overrides, "config override path.key=value");

  auto* sweep = app.add_subcommand("sweep", "run a config grid in parallel");
  sweep->add_option("--config", config_path, "sweep config with base + axes (JSON)")
      ->required();
  sweep->add_option("--out", out, "output directory for cells and summaries");
  sweep->add_option("--override", overrides, "override applied to the sweep doc");
  sweep->add_option("--threads", threads, "worker threads (default: hardware)");

  auto* verify = app.add_subcommand("verify", "run oracle verification suites");
  verify->add_option("--suite", suite, "suite name or 'all'");
  verify->add_option("--seed", verify_seed, "base seed for the batteries");

  auto* gen_env = app.add_subcommand("gen-env", "emit a resolved environment spec");
  gen_env->add_option("--config", config_path, "experiment config (JSON)");
  gen_env->add_option("--out", out, "spec output path (stdout if omitted)");
  gen_env->add_option("--override", overrides, "config override path.key=value");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, overrides, seed, out);
    if (sweep->parsed()) return cmd_sweep(config_path, overrides, out, threads);
    if (verify->parsed()) return cmd_verify(suite, verify_seed);
    if (gen_env->parsed()) return cmd_gen_env(config_path, overrides, out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
