#include <doctest.h>

#include <cmath>

#include "cmdp/context_sequence.hpp"
#include "cmdp/hard_instance.hpp"
#include "cmdp/linear_cmdp.hpp"
#include "cmdp/packing.hpp"
#include "cmdp/planning.hpp"
#include "cmdp/random_mdp.hpp"
#include "cmdp/smooth_cmdp.hpp"
#include "support.hpp"

using namespace cmdp;

namespace {

double row_l1_gap(const TabularMdp& a, const TabularMdp& b, std::size_t s,
                  std::size_t act) {
  double l1 = 0.0;
  auto ra = a.transition_row(s, act);
  auto rb = b.transition_row(s, act);
  for (std::size_t s2 = 0; s2 < a.num_states(); ++s2)
    l1 += std::abs(ra[s2] - rb[s2]);
  return l1;
}

LinearCmdp random_linear(std::size_t d, std::size_t S, std::size_t A, std::size_t H,
                         Rng& rng) {
  auto init = rng.sample_dirichlet(S, 1.0);
  std::vector<TabularMdp> bases;
  for (std::size_t i = 0; i < d; ++i)
    bases.push_back(random_mdp_with_init(S, A, H, init, rng, 1.0));
  return LinearCmdp(std::move(bases));
}

}  // namespace

TEST_CASE("linear CMDP: one-hot contexts recover the base MDPs") {
  Rng rng(1001);
  const auto cmdp = random_linear(3, 4, 2, 3, rng);
  for (std::size_t i = 0; i < 3; ++i) {
    Context c{std::vector<double>(3, 0.0)};
    c.coords[i] = 1.0;
    const auto mdp = cmdp.instantiate(c);
    for (std::size_t s = 0; s < 4; ++s) {
      for (std::size_t a = 0; a < 2; ++a) {
        CHECK(row_l1_gap(mdp, cmdp.base(i), s, a) <= 1e-12);
        CHECK(std::abs(mdp.reward(s, a) - cmdp.base(i).reward(s, a)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("linear CMDP: convexity of a two-point mixture") {
  // base 1 sends everything to state 0, base 2 to state 1
  auto point_mass = [](std::size_t target) {
    std::vector<double> t(2 * 1 * 2, 0.0);
    t[0 * 2 + target] = 1.0;
    t[1 * 2 + target] = 1.0;
    return TabularMdp(2, 1, 2, t, {0.5, 0.5}, {1.0, 0.0});
  };
  LinearCmdp cmdp({point_mass(0), point_mass(1)});
  const auto mixed = cmdp.instantiate(Context{{0.5, 0.5}});
  CHECK(mixed.transition(0, 0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mixed.transition(0, 0, 1) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("linear CMDP: mixture rows stay on the simplex") {
  Rng rng(1002);
  const auto cmdp = random_linear(4, 3, 2, 3, rng);
  for (int i = 0; i < 50; ++i) {
    const Context c{rng.sample_simplex(4)};
    const auto mdp = cmdp.instantiate(c);
    for (std::size_t s = 0; s < 3; ++s) {
      for (std::size_t a = 0; a < 2; ++a) {
        auto row = mdp.transition_row(s, a);
        double sum = 0.0;
        for (double x : row) {
          CHECK(x >= 0.0);
          sum += x;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("linear CMDP rejects off-simplex contexts") {
  Rng rng(1003);
  const auto cmdp = random_linear(2, 2, 2, 2, rng);
  CHECK_THROWS_AS(cmdp.instantiate(Context{{0.7, 0.7}}), std::invalid_argument);
  CHECK_THROWS_AS(cmdp.instantiate(Context{{-0.2, 1.2}}), std::invalid_argument);
  CHECK_THROWS_AS(cmdp.instantiate(Context{{1.0}}), std::invalid_argument);
}

TEST_CASE("hard MDP transition table matches the construction") {
  SUBCASE("z_i = 2 with three actions") {
    const auto mdp = build_hard_mdp({2}, 0.1, 3, 4);
    const HardLayout layout{1};
    CHECK(mdp.transition(layout.bandit(0), 0, layout.plus()) ==
          doctest::Approx(0.55).epsilon(1e-15));
    CHECK(mdp.transition(layout.bandit(0), 1, layout.plus()) ==
          doctest::Approx(0.5).epsilon(1e-15));
    CHECK(mdp.transition(layout.bandit(0), 2, layout.plus()) ==
          doctest::Approx(0.6).epsilon(1e-15));
  }
  SUBCASE("z_i = 0: no action beats the baseline") {
    const auto mdp = build_hard_mdp({0}, 0.1, 3, 4);
    const HardLayout layout{1};
    CHECK(mdp.transition(layout.bandit(0), 0, layout.plus()) ==
          doctest::Approx(0.55).epsilon(1e-15));
    for (std::size_t a : {1, 2})
      CHECK(mdp.transition(layout.bandit(0), a, layout.plus()) ==
            doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("structure: fan-out, absorbing sinks, rewards") {
    const auto mdp = build_hard_mdp({1, 0, 1}, 0.2, 2, 5);
    const HardLayout layout{3};
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t i = 0; i < 3; ++i)
        CHECK(mdp.transition(layout.start(), a, layout.bandit(i)) ==
              doctest::Approx(1.0 / 3).epsilon(1e-15));
      CHECK(mdp.transition(layout.plus(), a, layout.plus()) == 1.0);
      CHECK(mdp.transition(layout.minus(), a, layout.minus()) == 1.0);
      CHECK(mdp.reward(layout.plus(), a) == 1.0);
      CHECK(mdp.reward(layout.minus(), a) == 0.0);
      CHECK(mdp.reward(layout.start(), a) == 0.0);
      CHECK(mdp.reward(layout.bandit(0), a) == 0.0);
    }
    CHECK(mdp.initial_dist()[layout.start()] == 1.0);
  }
  SUBCASE("optimal value for n=1, A=2, eps'=0.1, H=4") {
    const auto mdp = build_hard_mdp({1}, 0.1, 2, 4);
    CHECK(brute_force_value(mdp, plan_optimal(mdp).policy) ==
          doctest::Approx(0.3).epsilon(1e-12));
  }
}

TEST_CASE("hard CMDP interpolation formula") {
  const double eps_prime = 0.05;
  // packing points 0.5 apart (>= 8 * eps' = 0.4)
  std::vector<Context> points{Context{{0.0}}, Context{{0.5}}, Context{{1.0}}};
  std::vector<std::vector<std::size_t>> assignments{{1}, {0}, {1}};
  const HardInstanceCmdp cmdp(points, assignments, eps_prime, 2, 4);

  SUBCASE("packing points reproduce their own assignment") {
    CHECK(cmdp.transition_to_plus(points[0], 0, 1) ==
          doctest::Approx(0.5 + eps_prime).epsilon(1e-15));
    CHECK(cmdp.transition_to_plus(points[0], 0, 0) ==
          doctest::Approx(0.5 + eps_prime / 2).epsilon(1e-15));
    CHECK(cmdp.transition_to_plus(points[1], 0, 1) ==
          doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("distance subtraction: p - dist/2 while above 1/2") {
    // dist 0.04 from point 0: 0.55 - 0.02 = 0.53
    CHECK(cmdp.transition_to_plus(Context{{0.04}}, 0, 1) ==
          doctest::Approx(0.53).epsilon(1e-12));
  }
  SUBCASE("far from every point: floors at 1/2") {
    CHECK(cmdp.transition_to_plus(Context{{0.25}}, 0, 1) ==
          doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("single relevant point with p = 0.6") {
    // eps' = 0.1: packing {0, 0.8}, z = {1} at the first point only
    const HardInstanceCmdp wide({Context{{0.0}}, Context{{0.8}}}, {{1}, {0}},
                                0.1, 2, 4);
    // dist 0.1: max(1/2, 0.6 - 0.05) = 0.55
    CHECK(wide.transition_to_plus(Context{{0.1}}, 0, 1) ==
          doctest::Approx(0.55).epsilon(1e-12));
    // dist 0.3: the subtraction floors at 1/2
    CHECK(wide.transition_to_plus(Context{{0.3}}, 0, 1) ==
          doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("instantiate produces a valid MDP everywhere") {
    Rng rng(4);
    for (int i = 0; i < 20; ++i)
      CHECK_NOTHROW(cmdp.instantiate(Context{{rng.uniform()}}));
  }
}

TEST_CASE("hard CMDP satisfies the 1-Lipschitz bound") {
  Rng rng(2024);
  const BoxSpace space{2, 0.0, 1.0};
  const double eps_prime = 0.05;
  auto packing = build_packing(space, 8.0 * eps_prime);
  const auto cmdp = HardInstanceCmdp::random_assignments(packing.points, 2,
                                                         eps_prime, 3, 4, rng);
  for (int i = 0; i < 2000; ++i) {
    const Context c1{{rng.uniform(), rng.uniform()}};
    const Context c2{{rng.uniform(), rng.uniform()}};
    const double dist = l2_distance(c1, c2);
    const auto m1 = cmdp.instantiate(c1);
    const auto m2 = cmdp.instantiate(c2);
    for (std::size_t s = 0; s < m1.num_states(); ++s)
      for (std::size_t a = 0; a < m1.num_actions(); ++a)
        CHECK(row_l1_gap(m1, m2, s, a) <= dist + 1e-9);
  }
}

TEST_CASE("epsilon_prime and epsilon_one") {
  CHECK(epsilon_one(0.01, 5) / epsilon_prime(0.01, 5) ==
        doctest::Approx(8.0).epsilon(1e-12));
  CHECK(epsilon_one(1e-4, 10) / epsilon_prime(1e-4, 10) ==
        doctest::Approx(8.0).epsilon(1e-12));
  // frozen from 30-digit arithmetic: 160*10*1e-4*e^4/8
  CHECK(epsilon_prime(1e-4, 10) ==
        doctest::Approx(1.09196300066288478).epsilon(1e-12));
  // H -> infinity limit: 160 * eps * e^4
  CHECK(epsilon_prime(1e-3, 1000000) ==
        doctest::Approx(160.0 * 1e-3 * std::exp(4.0)).epsilon(1e-4));
  CHECK_THROWS_AS(epsilon_prime(0.1, 2), std::invalid_argument);
}

TEST_CASE("build_packing hand-checkable cases") {
  SUBCASE("interval [0,1] at r=0.6 keeps exactly {0, ~0.6}") {
    const auto packing = build_packing(BoxSpace{1, 0.0, 1.0}, 0.6);
    REQUIRE(packing.points.size() == 2);
    CHECK(packing.points[0].coords[0] == 0.0);
    CHECK(packing.points[1].coords[0] >= 0.6);
    CHECK(packing.points[1].coords[0] <= 0.62);
    CHECK(verify_packing(packing, BoxSpace{1, 0.0, 1.0}));
  }
  SUBCASE("radius beyond the diameter keeps one point") {
    CHECK(build_packing(BoxSpace{1, 0.0, 1.0}, 1.5).points.size() == 1);
    CHECK(build_packing(BoxSpace{2, 0.0, 1.0}, 1.5).points.size() == 1);
  }
  SUBCASE("pairwise separation certificate") {
    const auto packing = build_packing(BoxSpace{2, 0.0, 1.0}, 0.3);
    CHECK(packing.min_pairwise_distance >= 0.3);
    CHECK(verify_packing(packing, BoxSpace{2, 0.0, 1.0}));
  }
}

TEST_CASE("interpolated smooth family meets its declared constants") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const BoxSpace space{2, 0.0, 1.0};
    const auto family =
        make_interpolated_smooth_cmdp(space, 4, 2, 3, 1.0, 1.0, seed);
    CHECK(family.achieved_lip_p <= 1.0 + 1e-12);
    CHECK(family.achieved_lip_r <= 1.0 + 1e-12);

    Rng rng(seed);
    for (int i = 0; i < 300; ++i) {
      const Context c1{{rng.uniform(), rng.uniform()}};
      const Context c2{{rng.uniform(), rng.uniform()}};
      const double dist = l2_distance(c1, c2);
      const auto m1 = family.cmdp.instantiate(c1);
      const auto m2 = family.cmdp.instantiate(c2);
      for (std::size_t s = 0; s < 4; ++s) {
        for (std::size_t a = 0; a < 2; ++a) {
          CHECK(row_l1_gap(m1, m2, s, a) <= family.cmdp.lip_p() * dist + 1e-9);
          CHECK(std::abs(m1.reward(s, a) - m2.reward(s, a)) <=
                family.cmdp.lip_r() * dist + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("context sequences stay in their declared space") {
  SUBCASE("iid box") {
    auto seq = ContextSequence::iid_uniform_box(BoxSpace{3, 0.0, 1.0}, 9);
    for (int i = 0; i < 200; ++i)
      CHECK(BoxSpace{3, 0.0, 1.0}.contains(seq.next()));
  }
  SUBCASE("iid simplex") {
    auto seq = ContextSequence::iid_uniform_simplex(4, 9);
    for (int i = 0; i < 200; ++i) CHECK(on_simplex(seq.next()));
  }
  SUBCASE("cyclic permutation covers every point each cycle") {
    std::vector<Context> pts{Context{{0.0}}, Context{{0.3}}, Context{{0.6}},
                             Context{{0.9}}};
    auto seq = ContextSequence::cyclic_permutation(pts, 99);
    std::vector<Context> first_cycle;
    for (int i = 0; i < 4; ++i) first_cycle.push_back(seq.next());
    for (const auto& p : pts) {
      bool found = false;
      for (const auto& q : first_cycle) found = found || q == p;
      CHECK(found);
    }
    // the permutation repeats
    for (int i = 0; i < 4; ++i) CHECK(seq.next() == first_cycle[i]);
  }
  SUBCASE("fixed list cycles in order") {
    auto seq =
        ContextSequence::fixed_list({Context{{0.1}}, Context{{0.2}}});
    CHECK(seq.next() == Context{{0.1}});
    CHECK(seq.next() == Context{{0.2}});
    CHECK(seq.next() == Context{{0.1}});
  }
}
