#include "cmdp/packing.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cmdp {

Packing build_packing(const BoxSpace& space, double radius,
                      std::size_t candidate_budget) {
  if (radius <= 0.0) throw std::invalid_argument("build_packing: radius must be positive");
  if (space.dim == 0 || space.hi <= space.lo)
    throw std::invalid_argument("build_packing: degenerate space");

  // per-axis resolution k with k^dim <= budget
  std::size_t k = std::max<std::size_t>(
      2, static_cast<std::size_t>(
             std::floor(std::pow(static_cast<double>(candidate_budget),
                                 1.0 / static_cast<double>(space.dim)))));

  Packing packing;
  packing.radius = radius;
  packing.lattice_per_axis = k;

  std::vector<std::size_t> idx(space.dim, 0);
  const double step = (space.hi - space.lo) / static_cast<double>(k - 1);
  Context candidate;
  candidate.coords.resize(space.dim);
  for (;;) {
    for (std::size_t i = 0; i < space.dim; ++i)
      candidate.coords[i] = space.lo + step * static_cast<double>(idx[i]);

    bool keep = true;
    for (const auto& p : packing.points) {
      if (l2_distance(candidate, p) < radius) {
        keep = false;
        break;
      }
    }
    if (keep) packing.points.push_back(candidate);

    // lexicographic odometer, last axis fastest
    std::size_t i = space.dim;
    bool done = true;
    while (i-- > 0) {
      if (++idx[i] < k) {
        done = false;
        break;
      }
      idx[i] = 0;
    }
    if (done) break;
  }

  packing.min_pairwise_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < packing.points.size(); ++i) {
    for (std::size_t j = i + 1; j < packing.points.size(); ++j) {
      packing.min_pairwise_distance = std::min(
          packing.min_pairwise_distance,
          l2_distance(packing.points[i], packing.points[j]));
    }
  }
  return packing;
}

bool verify_packing(const Packing& packing, const BoxSpace& space) {
  const auto& pts = packing.points;
  if (pts.empty() || packing.lattice_per_axis < 2) return false;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (l2_distance(pts[i], pts[j]) < packing.radius) return false;
    }
  }

  const std::size_t k = packing.lattice_per_axis;
  const double step = (space.hi - space.lo) / static_cast<double>(k - 1);
  std::vector<std::size_t> idx(space.dim, 0);
  Context candidate;
  candidate.coords.resize(space.dim);
  for (;;) {
    for (std::size_t i = 0; i < space.dim; ++i)
      candidate.coords[i] = space.lo + step * static_cast<double>(idx[i]);
    // every candidate is within radius of a kept point (kept points cover
    // themselves at distance 0); anything else would have been kept by greedy
    bool covered = false;
    for (const auto& p : pts) {
      if (l2_distance(candidate, p) < packing.radius) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;

    std::size_t i = space.dim;
    bool done = true;
    while (i-- > 0) {
      if (++idx[i] < k) {
        done = false;
        break;
      }
      idx[i] = 0;
    }
    if (done) break;
  }
  return true;
}

}  // namespace cmdp
