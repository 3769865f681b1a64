#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cmdp/context.hpp"
#include "cmdp/hard_instance.hpp"
#include "cmdp/linear_cmdp.hpp"
#include "cmdp/smooth_cmdp.hpp"
#include "cmdp/tabular_mdp.hpp"

namespace cmdp::harness {

nlohmann::ordered_json mdp_to_json(const TabularMdp& mdp);
TabularMdp mdp_from_json(const nlohmann::ordered_json& j);

/// Family-independent view over the contextual environments the harness
/// drives. Carries the Lipschitz constants the cover agent plans with and
/// the context-space description the sequence generators draw from, and
/// serializes to a fully resolved spec (anchor MDPs, base MDPs, packing
/// points and assignments are materialized, not seeds).
class EnvModel {
 public:
  struct SmoothEnv {
    BoxSpace space;
    TabularMdp anchor0;
    TabularMdp anchor1;
    double lip_p;
    double lip_r;
    double slope;
    double achieved_lip_p;
    double achieved_lip_r;
  };
  struct LinearEnv {
    LinearCmdp cmdp;
  };
  struct HardEnv {
    HardInstanceCmdp cmdp;
    BoxSpace space;
  };

  static EnvModel smooth(InterpolatedSmoothFamily family);
  static EnvModel linear(LinearCmdp cmdp);
  static EnvModel hard(HardInstanceCmdp cmdp, BoxSpace space);

  TabularMdp instantiate(const Context& c) const;

  std::string family() const;
  std::size_t num_states() const;
  std::size_t num_actions() const;
  std::size_t horizon() const;
  std::vector<double> initial_dist() const;

  /// Context dimension: box dimension, or d for the simplex of a linear env.
  std::size_t context_dim() const;

  /// Linear environments draw contexts from the simplex, the others from a box.
  bool simplex_contexts() const;
  const BoxSpace& box() const;

  /// Declared Lipschitz constants for planning the cover radius. For the
  /// linear family these are the sqrt(d) bounds implied by the mixture, for
  /// the hard family L_p = 1 and L_r = 0.
  double lip_p() const;
  double lip_r() const;

  /// Hard family only: its packing points (cyclic sequences default to them).
  const std::vector<Context>* packing_points() const;

  nlohmann::ordered_json to_json() const;
  static EnvModel from_json(const nlohmann::ordered_json& j);

  const std::variant<SmoothEnv, LinearEnv, HardEnv>& detail() const { return env_; }

 private:
  explicit EnvModel(std::variant<SmoothEnv, LinearEnv, HardEnv> env)
      : env_(std::move(env)) {}

  std::variant<SmoothEnv, LinearEnv, HardEnv> env_;
};

}  // namespace cmdp::harness
