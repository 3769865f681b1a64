#include "cmdp/smooth_cmdp.hpp"

#include <cmath>
#include <stdexcept>

#include "cmdp/random_mdp.hpp"
#include "cmdp/rng.hpp"

namespace cmdp {

TabularMdp mix_mdps(const TabularMdp& a, const TabularMdp& b, double w) {
  if (a.num_states() != b.num_states() || a.num_actions() != b.num_actions() ||
      a.horizon() != b.horizon())
    throw std::invalid_argument("mix_mdps: shape mismatch");
  if (w < 0.0 || w > 1.0) throw std::invalid_argument("mix_mdps: w must be in [0, 1]");

  std::vector<double> transitions(a.transitions().size());
  std::vector<double> rewards(a.rewards().size());
  for (std::size_t j = 0; j < transitions.size(); ++j)
    transitions[j] = (1.0 - w) * a.transitions()[j] + w * b.transitions()[j];
  for (std::size_t j = 0; j < rewards.size(); ++j)
    rewards[j] = (1.0 - w) * a.rewards()[j] + w * b.rewards()[j];
  return TabularMdp(a.num_states(), a.num_actions(), a.horizon(),
                    std::move(transitions), std::move(rewards), a.initial_dist());
}

double interpolation_weight(const Context& c, double slope) {
  double mean = 0.0;
  for (double x : c.coords) mean += x;
  mean /= static_cast<double>(c.dim());
  return slope * mean;
}

SmoothCmdp::SmoothCmdp(BoxSpace space, double lip_p, double lip_r, Generator generator)
    : space_(space), lip_p_(lip_p), lip_r_(lip_r), generator_(std::move(generator)) {
  if (lip_p_ < 0.0 || lip_r_ < 0.0)
    throw std::invalid_argument("SmoothCmdp: Lipschitz constants must be nonnegative");
  if (!generator_) throw std::invalid_argument("SmoothCmdp: missing generator");
}

InterpolatedSmoothFamily make_interpolated_smooth_cmdp_from_anchors(
    BoxSpace space, TabularMdp anchor0, TabularMdp anchor1, double lip_p,
    double lip_r) {
  if (space.lo != 0.0 || space.hi != 1.0)
    throw std::invalid_argument("interpolated smooth family: unit box expected");

  auto m0 = std::make_shared<const TabularMdp>(std::move(anchor0));
  auto m1 = std::make_shared<const TabularMdp>(std::move(anchor1));
  const std::size_t S = m0->num_states();
  const std::size_t A = m0->num_actions();

  // Anchor gaps determine the family's raw Lipschitz constants. The mixing
  // weight moves by at most dist(c1,c2)/sqrt(d) per unit of context motion,
  // so a slope of L*sqrt(d)/gap meets a requested constant L.
  double gap_p = 0.0;
  double gap_r = 0.0;
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t a = 0; a < A; ++a) {
      double row_gap = 0.0;
      auto r0 = m0->transition_row(s, a);
      auto r1 = m1->transition_row(s, a);
      for (std::size_t s2 = 0; s2 < S; ++s2) row_gap += std::abs(r0[s2] - r1[s2]);
      gap_p = std::max(gap_p, row_gap);
      gap_r = std::max(gap_r, std::abs(m0->reward(s, a) - m1->reward(s, a)));
    }
  }

  const double sqrt_d = std::sqrt(static_cast<double>(space.dim));
  double slope = 1.0;
  if (gap_p > 0.0) slope = std::min(slope, lip_p * sqrt_d / gap_p);
  if (gap_r > 0.0) slope = std::min(slope, lip_r * sqrt_d / gap_r);

  const std::size_t dim = space.dim;
  auto generator = [m0, m1, slope, dim](const Context& c) {
    if (c.dim() != dim)
      throw std::invalid_argument("smooth family: context dimension mismatch");
    return mix_mdps(*m0, *m1, interpolation_weight(c, slope));
  };

  return InterpolatedSmoothFamily{
      SmoothCmdp(space, lip_p, lip_r, std::move(generator)),
      m0, m1, slope, slope * gap_p / sqrt_d, slope * gap_r / sqrt_d};
}

InterpolatedSmoothFamily make_interpolated_smooth_cmdp(
    BoxSpace space, std::size_t num_states, std::size_t num_actions,
    std::size_t horizon, double lip_p, double lip_r, std::uint64_t seed,
    double concentration) {
  Rng rng(Rng::derive_seed(seed, 0x5107));
  auto init = rng.sample_dirichlet(num_states, 1.0);
  TabularMdp m0 = random_mdp_with_init(num_states, num_actions, horizon, init, rng,
                                       concentration);
  TabularMdp m1 = random_mdp_with_init(num_states, num_actions, horizon, init, rng,
                                       concentration);
  return make_interpolated_smooth_cmdp_from_anchors(space, std::move(m0),
                                                    std::move(m1), lip_p, lip_r);
}

}  // namespace cmdp
