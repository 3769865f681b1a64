#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace cmdp::harness {

/// Grid sweep over config overrides. The document holds a `base` experiment
/// config plus an `axes` object mapping dotted override paths to value
/// lists; cells are the cross product, run in parallel on independent
/// agents/environments/RNGs and collected after completion. Each cell writes
/// its own run directory under out_dir; the returned summary (also written
/// as sweep.json and sweep.csv) has one entry per cell.
nlohmann::ordered_json run_sweep(const nlohmann::ordered_json& sweep_doc,
                                 const std::string& out_dir,
                                 std::size_t max_threads = 0);

}  // namespace cmdp::harness
