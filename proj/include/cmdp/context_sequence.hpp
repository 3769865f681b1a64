#pragma once

#include <cstdint>
#include <vector>

#include "cmdp/context.hpp"
#include "cmdp/rng.hpp"

namespace cmdp {

/// Deterministic stream of episode contexts. Modes mirror the protocols the
/// experiments use: repeated seeded permutation of a point set, iid uniform
/// draws from a box or from the simplex, and scripted (fixed) lists.
class ContextSequence {
 public:
  /// One seeded permutation of the points, repeated forever.
  static ContextSequence cyclic_permutation(std::vector<Context> points,
                                            std::uint64_t seed);

  static ContextSequence iid_uniform_box(BoxSpace space, std::uint64_t seed);

  static ContextSequence iid_uniform_simplex(std::size_t dim, std::uint64_t seed);

  /// Fixed list, cycled when exhausted. Covers scripted (adversarial)
  /// sequences.
  static ContextSequence fixed_list(std::vector<Context> points);

  Context next();

 private:
  enum class Mode { Cyclic, IidBox, IidSimplex, Fixed };

  ContextSequence(Mode mode, std::uint64_t seed) : mode_(mode), rng_(seed) {}

  Mode mode_;
  Rng rng_;
  BoxSpace space_;
  std::size_t dim_ = 0;
  std::vector<Context> points_;
  std::size_t cursor_ = 0;
};

}  // namespace cmdp
