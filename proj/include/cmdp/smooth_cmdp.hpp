#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "cmdp/context.hpp"
#include "cmdp/tabular_mdp.hpp"

namespace cmdp {

/// Pointwise convex combination (1-w)*a + w*b of two MDPs sharing
/// (S, A, H) and the initial distribution. Requires w in [0, 1].
TabularMdp mix_mdps(const TabularMdp& a, const TabularMdp& b, double w);

/// Contextual family whose transition and reward functions are Lipschitz in
/// the context under the l2 metric:
///   max_{s,a} ||p^{c1}(.|s,a) - p^{c2}(.|s,a)||_1 <= lip_p * dist(c1, c2)
///   max_{s,a} |r^{c1}(s,a) - r^{c2}(s,a)|        <= lip_r * dist(c1, c2)
/// The declared constants are contractual upper bounds; generators may be
/// tighter.
class SmoothCmdp {
 public:
  using Generator = std::function<TabularMdp(const Context&)>;

  SmoothCmdp(BoxSpace space, double lip_p, double lip_r, Generator generator);

  TabularMdp instantiate(const Context& c) const { return generator_(c); }

  const BoxSpace& space() const { return space_; }
  double lip_p() const { return lip_p_; }
  double lip_r() const { return lip_r_; }

 private:
  BoxSpace space_;
  double lip_p_;
  double lip_r_;
  Generator generator_;
};

/// Two-anchor experiment family on the unit box: seeded random anchor MDPs
/// M0, M1 sharing the initial distribution, mixed as
/// mix_mdps(M0, M1, slope * mean(c)). The slope is chosen so the family's
/// actual Lipschitz constants stay within the requested ones; the achieved
/// constants are reported alongside, and the anchors are exposed so the
/// family can be serialized exactly.
struct InterpolatedSmoothFamily {
  SmoothCmdp cmdp;
  std::shared_ptr<const TabularMdp> anchor0;
  std::shared_ptr<const TabularMdp> anchor1;
  double slope = 0.0;
  double achieved_lip_p = 0.0;
  double achieved_lip_r = 0.0;
};

/// `concentration` shapes the anchors' transition rows (low values give
/// peaky, fast-to-estimate rows).
InterpolatedSmoothFamily make_interpolated_smooth_cmdp(
    BoxSpace space, std::size_t num_states, std::size_t num_actions,
    std::size_t horizon, double lip_p, double lip_r, std::uint64_t seed,
    double concentration = 0.3);

/// Same family from externally supplied anchors (exact reconstruction from
/// a serialized spec).
InterpolatedSmoothFamily make_interpolated_smooth_cmdp_from_anchors(
    BoxSpace space, TabularMdp anchor0, TabularMdp anchor1, double lip_p,
    double lip_r);

/// Mixing weight for a context: slope * mean(c).
double interpolation_weight(const Context& c, double slope);

}  // namespace cmdp
