#include "cmdp/context_sequence.hpp"

#include <stdexcept>
#include <utility>

namespace cmdp {

ContextSequence ContextSequence::cyclic_permutation(std::vector<Context> points,
                                                    std::uint64_t seed) {
  if (points.empty())
    throw std::invalid_argument("ContextSequence: empty point set");
  ContextSequence seq(Mode::Cyclic, seed);
  seq.points_ = std::move(points);
  // Fisher-Yates with the sequence's own stream
  for (std::size_t i = seq.points_.size(); i-- > 1;) {
    std::size_t j = seq.rng_.uniform_index(i + 1);
    std::swap(seq.points_[i], seq.points_[j]);
  }
  return seq;
}

ContextSequence ContextSequence::iid_uniform_box(BoxSpace space, std::uint64_t seed) {
  ContextSequence seq(Mode::IidBox, seed);
  seq.space_ = space;
  return seq;
}

ContextSequence ContextSequence::iid_uniform_simplex(std::size_t dim,
                                                     std::uint64_t seed) {
  if (dim == 0) throw std::invalid_argument("ContextSequence: dim must be positive");
  ContextSequence seq(Mode::IidSimplex, seed);
  seq.dim_ = dim;
  return seq;
}

ContextSequence ContextSequence::fixed_list(std::vector<Context> points) {
  if (points.empty())
    throw std::invalid_argument("ContextSequence: empty point set");
  ContextSequence seq(Mode::Fixed, 0);
  seq.points_ = std::move(points);
  return seq;
}

Context ContextSequence::next() {
  switch (mode_) {
    case Mode::Cyclic:
    case Mode::Fixed: {
      Context c = points_[cursor_];
      cursor_ = (cursor_ + 1) % points_.size();
      return c;
    }
    case Mode::IidBox: {
      Context c;
      c.coords.resize(space_.dim);
      for (auto& x : c.coords) x = rng_.uniform(space_.lo, space_.hi);
      return c;
    }
    case Mode::IidSimplex:
      return Context{rng_.sample_simplex(dim_)};
  }
  throw std::logic_error("ContextSequence: unreachable");
}

}  // namespace cmdp
