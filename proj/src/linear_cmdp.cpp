#include "cmdp/linear_cmdp.hpp"

#include <cmath>
#include <stdexcept>

namespace cmdp {

LinearCmdp::LinearCmdp(std::vector<TabularMdp> bases) : bases_(std::move(bases)) {
  if (bases_.empty()) throw std::invalid_argument("LinearCmdp: no base MDPs");
  const auto& first = bases_.front();
  for (const auto& m : bases_) {
    if (m.num_states() != first.num_states() ||
        m.num_actions() != first.num_actions() || m.horizon() != first.horizon())
      throw std::invalid_argument("LinearCmdp: base MDPs must share (S, A, H)");
    for (std::size_t s = 0; s < m.num_states(); ++s) {
      if (std::abs(m.initial_dist()[s] - first.initial_dist()[s]) > kProbTol)
        throw std::invalid_argument(
            "LinearCmdp: base MDPs must share the initial distribution");
    }
  }
}

TabularMdp LinearCmdp::instantiate(const Context& c) const {
  if (c.dim() != dim())
    throw std::invalid_argument("LinearCmdp: context dimension mismatch");
  if (!on_simplex(c, kProbTol))
    throw std::invalid_argument("LinearCmdp: context is not on the simplex");

  const std::size_t S = num_states();
  const std::size_t A = num_actions();
  std::vector<double> transitions(S * A * S, 0.0);
  std::vector<double> rewards(S * A, 0.0);
  for (std::size_t i = 0; i < dim(); ++i) {
    const double w = c.coords[i];
    if (w <= 0.0) continue;  // tolerance-range negatives carry no mass
    const auto& t = bases_[i].transitions();
    const auto& r = bases_[i].rewards();
    for (std::size_t j = 0; j < transitions.size(); ++j) transitions[j] += w * t[j];
    for (std::size_t j = 0; j < rewards.size(); ++j) rewards[j] += w * r[j];
  }
  // mixtures can drift a hair below 0 or above 1 in floating point
  for (auto& r : rewards) r = std::min(1.0, std::max(0.0, r));
  return TabularMdp(S, A, horizon(), std::move(transitions), std::move(rewards),
                    initial_dist());
}

}  // namespace cmdp
