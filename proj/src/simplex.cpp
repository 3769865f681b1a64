#include "cmdp/simplex.hpp"

#include <algorithm>
#include <stdexcept>

namespace cmdp {

std::vector<double> project_simplex(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("project_simplex: empty vector");

  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());

  double cum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cum += sorted[j];
    const double t = (cum - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - t > 0.0) theta = t;  // t at the largest feasible rho
  }

  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

}  // namespace cmdp
