#pragma once

#include <vector>

#include "cmdp/context.hpp"

namespace cmdp {

/// An r-packing of a context space: points pairwise at least `radius` apart,
/// maximal against the candidate stream that produced it.
struct Packing {
  std::vector<Context> points;
  double radius = 0.0;
  double min_pairwise_distance = 0.0;  // certificate, +inf for a single point
  std::size_t lattice_per_axis = 0;    // resolution of the candidate stream
};

/// Greedy maximal packing: walk a deterministic lattice of candidate points
/// over the box (lexicographic order from the low corner) and keep every
/// candidate at distance >= radius from all kept points. The candidate
/// budget caps the lattice size; the per-axis resolution is derived from it.
Packing build_packing(const BoxSpace& space, double radius,
                      std::size_t candidate_budget = 20000);

/// Certificate check: kept points pairwise >= radius apart, and every
/// lattice candidate of the stream that produced the packing lies within
/// radius of some kept point (greedy maximality).
bool verify_packing(const Packing& packing, const BoxSpace& space);

}  // namespace cmdp
