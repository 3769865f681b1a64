#include <doctest.h>

#include <cmath>

#include "cmdp/cover_estimator.hpp"
#include "cmdp/rng.hpp"

using namespace cmdp;

TEST_CASE("compute_r0") {
  CHECK(compute_r0(0.8, 10, 1.0, 1.0) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(compute_r0(0.08, 1, 2.0, 1.0) == doctest::Approx(0.005).epsilon(1e-15));
  // zero transition constant drops its term
  CHECK(compute_r0(0.8, 10, 0.0, 1.0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(std::isinf(compute_r0(0.8, 10, 0.0, 0.0)));
  CHECK_THROWS_AS(compute_r0(0.0, 10, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(compute_r0(0.5, 10, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("compute_m frozen values") {
  // 128*(2 ln2 + 1) = 305.44...
  CHECK(compute_m(1.0, 4.0 / std::exp(1.0), 2, 2, 1) == 306);
  // formula value for S=5, A=2, H=5, eps=0.1, delta=0.1 (30-digit check)
  CHECK(compute_m(0.1, 0.1, 5, 2, 5) == 2582690);
  CHECK_THROWS_AS(compute_m(0.0, 0.1, 2, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(compute_m(0.1, 0.0, 2, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(compute_m(1.5, 0.1, 2, 2, 1), std::invalid_argument);
}

TEST_CASE("compute_m homogeneity: doubling H quadruples m") {
  // pick parameters where the raw value is integral after scaling
  const double raw1 =
      128.0 * (3.0 * std::log(2.0) + std::log(3.0 * 2.0 / 0.5)) * 4.0 / (0.25 * 0.25);
  const double raw2 =
      128.0 * (3.0 * std::log(2.0) + std::log(3.0 * 2.0 / 0.5)) * 16.0 / (0.25 * 0.25);
  CHECK(raw2 == doctest::Approx(4.0 * raw1).epsilon(1e-12));
  CHECK(compute_m(0.25, 0.5, 3, 2, 4) >= 4 * compute_m(0.25, 0.5, 3, 2, 2) - 4);
  CHECK(compute_m(0.25, 0.5, 3, 2, 4) <= 4 * compute_m(0.25, 0.5, 3, 2, 2) + 4);
}

TEST_CASE("online cover: ball creation and lookup") {
  CoverEstimator est(2, 2, /*ball_radius=*/0.1, /*visit_threshold=*/3);

  SUBCASE("first context opens ball 0 centered on it") {
    CHECK(est.num_balls() == 0);
    CHECK(est.locate_ball(Context{{0.5}}) == std::nullopt);
    CHECK(est.locate_or_create_ball(Context{{0.5}}) == 0);
    CHECK(est.num_balls() == 1);
    CHECK(est.center(0) == Context{{0.5}});
  }
  SUBCASE("context within r0 of a center joins that ball") {
    est.locate_or_create_ball(Context{{0.5}});
    CHECK(est.locate_or_create_ball(Context{{0.55}}) == 0);
    CHECK(est.num_balls() == 1);
  }
  SUBCASE("1-D grid of spacing 2*r0 + tiny makes one ball per point") {
    for (int i = 0; i < 5; ++i)
      est.locate_or_create_ball(Context{{0.201 * static_cast<double>(i)}});
    CHECK(est.num_balls() == 5);
    // revisits resolve to the original balls
    for (int i = 0; i < 5; ++i)
      CHECK(est.locate_or_create_ball(Context{{0.201 * static_cast<double>(i)}}) ==
            static_cast<std::size_t>(i));
  }
  SUBCASE("nearest center wins, ties to the lowest index") {
    est.locate_or_create_ball(Context{{0.5}});
    est.locate_or_create_ball(Context{{0.7}});
    CHECK(est.locate_ball(Context{{0.58}}) == 0);
    CHECK(est.locate_ball(Context{{0.64}}) == 1);
    CHECK(est.locate_ball(Context{{0.6}}) == 0);  // equidistant
  }
}

TEST_CASE("cover predict/update semantics") {
  const std::size_t S = 3, A = 2, m = 4;
  CoverEstimator est(S, A, 0.1, m);
  const Context c{{0.5}};

  SUBCASE("unknown until the threshold, empirical frequency after") {
    for (std::size_t i = 0; i < m - 1; ++i) {
      CHECK(est.predict(c, 0, 0) == std::nullopt);
      est.update(c, 0, 0, /*s_next=*/2, /*reward=*/0.25);
    }
    CHECK(est.predict(c, 0, 0) == std::nullopt);  // n = m-1
    est.update(c, 0, 0, 2, 0.25);
    auto pred = est.predict(c, 0, 0);
    REQUIRE(pred.has_value());
    CHECK(pred->transition == std::vector<double>{0.0, 0.0, 1.0});  // point mass
    CHECK(pred->reward == doctest::Approx(0.25).epsilon(1e-15));
  }

  SUBCASE("m=4 with transitions {0,0,1,1} gives (0.5, 0.5, 0)") {
    est.update(c, 1, 0, 0, 0.0);
    est.update(c, 1, 0, 0, 0.5);
    est.update(c, 1, 0, 1, 1.0);
    est.update(c, 1, 0, 1, 0.5);
    auto pred = est.predict(c, 1, 0);
    REQUIRE(pred.has_value());
    CHECK(pred->transition == std::vector<double>{0.5, 0.5, 0.0});
    CHECK(pred->reward == doctest::Approx(0.5).epsilon(1e-15));
  }

  SUBCASE("counts freeze at m") {
    for (int i = 0; i < 10; ++i) est.update(c, 0, 1, 0, 1.0);
    CHECK(est.visits(0, 0, 1) == m);
    auto pred = est.predict(c, 0, 1);
    REQUIRE(pred.has_value());
    CHECK(pred->reward == doctest::Approx(1.0).epsilon(1e-15));
  }

  SUBCASE("updates are ball-local") {
    const Context far{{0.9}};
    for (std::size_t i = 0; i < m; ++i) est.update(c, 0, 0, 1, 0.5);
    CHECK(est.predict(c, 0, 0).has_value());
    CHECK(est.predict(far, 0, 0) == std::nullopt);
    // far updates do not disturb the known ball
    est.update(far, 0, 0, 2, 0.0);
    auto pred = est.predict(c, 0, 0);
    REQUIRE(pred.has_value());
    CHECK(pred->transition[1] == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("cover centers form a packing at the ball radius") {
  const double r0 = 0.07;
  CoverEstimator est(2, 2, r0, 5);
  Rng rng(13);
  for (int i = 0; i < 2000; ++i)
    est.locate_or_create_ball(Context{{rng.uniform(), rng.uniform()}});
  // pairwise distances between centers are > r0 by construction
  for (std::size_t i = 0; i < est.num_balls(); ++i)
    for (std::size_t j = i + 1; j < est.num_balls(); ++j)
      CHECK(l2_distance(est.center(i), est.center(j)) > r0);
  // ball count stays within a generous packing bound for the unit square
  const double bound = (1.0 + 2.0 / r0) * (1.0 + 2.0 / r0);
  CHECK(static_cast<double>(est.num_balls()) <= bound);
}

TEST_CASE("cover snapshot round-trips") {
  CoverEstimator est(2, 2, 0.25, 3);
  Rng rng(77);
  for (int i = 0; i < 40; ++i) {
    const Context c{{rng.uniform()}};
    est.update(c, rng.uniform_index(2), rng.uniform_index(2), rng.uniform_index(2),
               rng.uniform());
  }
  const auto snapshot = est.snapshot();
  const auto restored = CoverEstimator::from_snapshot(snapshot);
  CHECK(restored.snapshot() == snapshot);
  CHECK(restored.num_balls() == est.num_balls());
  CHECK(restored.update_count() == est.update_count());
}
