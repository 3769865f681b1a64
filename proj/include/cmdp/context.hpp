#pragma once

#include <cstddef>
#include <vector>

namespace cmdp {

/// Observed side-information vector that selects the episode's MDP.
struct Context {
  std::vector<double> coords;

  std::size_t dim() const { return coords.size(); }
  bool operator==(const Context&) const = default;
};

double l2_norm(const Context& c);
double l2_distance(const Context& a, const Context& b);

/// True if the coordinates are nonnegative and sum to 1 within tol.
bool on_simplex(const Context& c, double tol = 1e-9);

/// Axis-aligned box [lo, hi]^dim with the l2 metric; the default context
/// space for experiments.
struct BoxSpace {
  std::size_t dim = 1;
  double lo = 0.0;
  double hi = 1.0;

  double diameter() const;
  bool contains(const Context& c, double tol = 1e-12) const;
};

}  // namespace cmdp
