#include "cmdp/harness/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>
#include <vector>

#include "cmdp/harness/experiment.hpp"

namespace cmdp::harness {

using nlohmann::ordered_json;

nlohmann::ordered_json run_sweep(const ordered_json& sweep_doc,
                                 const std::string& out_dir,
                                 std::size_t max_threads) {
  if (!sweep_doc.contains("base")) throw ConfigError("sweep: missing 'base' config");
  if (!sweep_doc.contains("axes") || !sweep_doc.at("axes").is_object())
    throw ConfigError("sweep: missing 'axes' object");

  const ordered_json base = sweep_doc.at("base");
  const ordered_json& axes = sweep_doc.at("axes");

  std::vector<std::string> paths;
  std::vector<std::vector<ordered_json>> values;
  std::size_t cell_count = 1;
  for (auto it = axes.begin(); it != axes.end(); ++it) {
    if (!it.value().is_array() || it.value().empty())
      throw ConfigError("sweep axis '" + it.key() + "' must be a nonempty array");
    paths.push_back(it.key());
    values.emplace_back(it.value().begin(), it.value().end());
    cell_count *= values.back().size();
  }
  if (cell_count == 0 || cell_count > 100000)
    throw ConfigError("sweep: unreasonable cell count");

  // materialize each cell's config document
  struct Cell {
    std::size_t index;
    ordered_json overrides;
    ordered_json config;
  };
  std::vector<Cell> cells;
  cells.reserve(cell_count);
  for (std::size_t i = 0; i < cell_count; ++i) {
    ordered_json config = base;
    ordered_json overrides;
    std::size_t rem = i;
    for (std::size_t axis = 0; axis < paths.size(); ++axis) {
      const auto& vals = values[axis];
      const ordered_json& v = vals[rem % vals.size()];
      rem /= vals.size();
      overrides[paths[axis]] = v;
      apply_override(config, paths[axis] + "=" + v.dump());
    }
    char name[32];
    std::snprintf(name, sizeof(name), "cell_%04zu", i);
    if (!out_dir.empty())
      config["out"] = (std::filesystem::path(out_dir) / name).string();
    cells.push_back(Cell{i, std::move(overrides), std::move(config)});
  }
  // validate everything up front so a bad axis fails before any work starts
  std::vector<ExperimentConfig> configs;
  configs.reserve(cells.size());
  for (const auto& cell : cells) configs.push_back(ExperimentConfig::from_json(cell.config));

  if (max_threads == 0)
    max_threads = std::max(1u, std::thread::hardware_concurrency());
  max_threads = std::min<std::size_t>(max_threads, cells.size());

  std::vector<ordered_json> cell_results(cells.size());
  std::vector<std::string> cell_errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        RunResult run = run_experiment(configs[i]);
        ordered_json entry;
        entry["cell"] = cells[i].index;
        entry["overrides"] = cells[i].overrides;
        entry["suboptimal_count"] = run.summary.at("suboptimal_count");
        entry["suboptimal_rate"] = run.summary.at("suboptimal_rate");
        entry["first_window_rate"] = run.summary.at("first_window_rate");
        entry["last_window_rate"] = run.summary.at("last_window_rate");
        cell_results[i] = std::move(entry);
      } catch (const std::exception& e) {
        cell_errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < max_threads; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cell_errors[i].empty())
      throw std::runtime_error("sweep cell " + std::to_string(i) +
                               " failed: " + cell_errors[i]);
  }

  ordered_json summary;
  summary["cells"] = ordered_json::array();
  for (auto& entry : cell_results) summary["cells"].push_back(std::move(entry));

  if (!out_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    write_json_file((fs::path(out_dir) / "sweep.json").string(), summary);

    std::ofstream csv(fs::path(out_dir) / "sweep.csv");
    csv << "cell";
    for (const auto& p : paths) csv << "," << p;
    csv << ",suboptimal_count,suboptimal_rate,first_window_rate,last_window_rate\n";
    for (const auto& entry : summary["cells"]) {
      csv << entry.at("cell");
      for (const auto& p : paths) csv << "," << entry.at("overrides").at(p).dump();
      csv << "," << entry.at("suboptimal_count") << ","
          << entry.at("suboptimal_rate") << "," << entry.at("first_window_rate")
          << "," << entry.at("last_window_rate") << "\n";
    }
  }
  return summary;
}

}  // namespace cmdp::harness
