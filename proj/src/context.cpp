#include "cmdp/context.hpp"

#include <cmath>
#include <stdexcept>

namespace cmdp {

double l2_norm(const Context& c) {
  double s = 0.0;
  for (double x : c.coords) s += x * x;
  return std::sqrt(s);
}

double l2_distance(const Context& a, const Context& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("l2_distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    double d = a.coords[i] - b.coords[i];
    s += d * d;
  }
  return std::sqrt(s);
}

bool on_simplex(const Context& c, double tol) {
  double sum = 0.0;
  for (double x : c.coords) {
    if (x < -tol) return false;
    sum += x;
  }
  return std::abs(sum - 1.0) <= tol;
}

double BoxSpace::diameter() const {
  return (hi - lo) * std::sqrt(static_cast<double>(dim));
}

bool BoxSpace::contains(const Context& c, double tol) const {
  if (c.dim() != dim) return false;
  for (double x : c.coords) {
    if (x < lo - tol || x > hi + tol) return false;
  }
  return true;
}

}  // namespace cmdp
