#pragma once

#include <vector>

#include "cmdp/context.hpp"
#include "cmdp/tabular_mdp.hpp"

namespace cmdp {

/// Contextual family whose MDP parameters are convex combinations of d base
/// MDPs: p^c(s'|s,a) = sum_i c_i p_i(s'|s,a) and r^c(s,a) = sum_i c_i r_i(s,a)
/// for contexts c in the probability simplex. The bases must share
/// (S, A, H, initial distribution).
class LinearCmdp {
 public:
  explicit LinearCmdp(std::vector<TabularMdp> bases);

  /// Mixture MDP for a simplex context. Rejects contexts off the simplex
  /// beyond 1e-9.
  TabularMdp instantiate(const Context& c) const;

  std::size_t dim() const { return bases_.size(); }
  std::size_t num_states() const { return bases_.front().num_states(); }
  std::size_t num_actions() const { return bases_.front().num_actions(); }
  std::size_t horizon() const { return bases_.front().horizon(); }
  const std::vector<double>& initial_dist() const {
    return bases_.front().initial_dist();
  }
  const TabularMdp& base(std::size_t i) const { return bases_[i]; }

 private:
  std::vector<TabularMdp> bases_;
};

}  // namespace cmdp
