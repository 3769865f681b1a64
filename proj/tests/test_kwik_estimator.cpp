#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "cmdp/kwik_estimator.hpp"
#include "cmdp/rng.hpp"

using namespace cmdp;

TEST_CASE("compute_alpha_s") {
  SUBCASE("frozen value for d=1, S=1, eps=0.5, delta=0.5, b=1") {
    const double alpha = compute_alpha_s(AlphaParams{1.0, 1.0, 0.5, 0.5, 1, 1});
    CHECK(alpha == doctest::Approx(0.25 / (2.0 * std::log(2.0))).epsilon(1e-12));
    CHECK(alpha == doctest::Approx(0.180336880111).epsilon(1e-9));
  }
  SUBCASE("large constants leave the eps/(2 sqrt d) branch") {
    const double alpha = compute_alpha_s(AlphaParams{1e9, 1e9, 0.2, 0.1, 4, 3});
    CHECK(alpha == doctest::Approx(0.2 / 4.0).epsilon(1e-12));
  }
  SUBCASE("monotone nonincreasing in d and S") {
    double prev = 1e9;
    for (std::size_t d = 1; d <= 8; ++d) {
      const double a = compute_alpha_s(AlphaParams{1.0, 1.0, 0.3, 0.2, d, 3});
      CHECK(a <= prev + 1e-15);
      prev = a;
    }
    prev = 1e9;
    for (std::size_t S = 1; S <= 8; ++S) {
      const double a = compute_alpha_s(AlphaParams{1.0, 1.0, 0.3, 0.2, 3, S});
      CHECK(a <= prev + 1e-15);
      prev = a;
    }
  }
  SUBCASE("rejects out-of-range inputs") {
    CHECK_THROWS_AS(compute_alpha_s(AlphaParams{1.0, 1.0, 0.0, 0.5, 1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(compute_alpha_s(AlphaParams{1.0, 1.0, 0.5, 1.0, 1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(compute_alpha_s(AlphaParams{0.0, 1.0, 0.5, 0.5, 1, 1}),
                    std::invalid_argument);
  }
}

TEST_CASE("Sherman-Morrison update: first step from the identity") {
  // alpha tiny so every update passes the gate
  KwikEstimator est(2, 1, 2, 1e-12);
  est.update(Context{{1.0, 0.0}}, 0, 0, 1, 0.5);
  const auto& Q = est.inverse_covariance(0, 0);
  CHECK(Q(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(Q(0, 1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(Q(1, 0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(Q(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(est.label_weights(0, 0)(0, 1) == doctest::Approx(1.0));
  CHECK(est.reward_weights(0, 0)(0) == doctest::Approx(0.5));
}

TEST_CASE("zero context leaves the state unchanged") {
  KwikEstimator est(2, 1, 2, 1e-12);
  est.update(Context{{0.7, 0.3}}, 0, 0, 0, 0.2);
  const Eigen::MatrixXd q_before = est.inverse_covariance(0, 0);
  const Eigen::MatrixXd w_before = est.label_weights(0, 0);
  est.update(Context{{0.0, 0.0}}, 0, 0, 1, 0.9);
  CHECK((est.inverse_covariance(0, 0) - q_before).norm() == 0.0);
  CHECK((est.label_weights(0, 0) - w_before).norm() == 0.0);
}

TEST_CASE("incremental Q equals the direct inverse of I + C^T C") {
  for (std::size_t d = 2; d <= 6; ++d) {
    KwikEstimator est(3, 1, d, 1e-12);
    Rng rng(1000 + d);
    Eigen::MatrixXd C(50, static_cast<Eigen::Index>(d));
    for (int t = 0; t < 50; ++t) {
      Context c{std::vector<double>(d)};
      for (auto& x : c.coords) x = rng.uniform(-1.0, 1.0);
      for (std::size_t i = 0; i < d; ++i)
        C(t, static_cast<Eigen::Index>(i)) = c.coords[i];
      est.update(c, 0, 0, rng.uniform_index(3), rng.uniform());
    }
    REQUIRE(est.update_count(0, 0) == 50);
    const Eigen::MatrixXd direct =
        (Eigen::MatrixXd::Identity(d, d) + C.transpose() * C).inverse();
    CHECK((est.inverse_covariance(0, 0) - direct).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("knownness semantics") {
  const std::size_t d = 2;
  const double alpha = 0.05;
  KwikEstimator est(2, 1, d, alpha);
  const Context e1{{1.0, 0.0}};
  const Context e2{{0.0, 1.0}};

  SUBCASE("fresh state answers don't-know for any context above alpha") {
    CHECK(est.predict(e1, 0, 0) == std::nullopt);  // ||Q c|| = 1 > alpha
  }

  SUBCASE("training along e1 certifies e1 but not e2") {
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
      if (!est.predict(e1, 0, 0)) est.update(e1, 0, 0, rng.uniform() < 0.3 ? 0 : 1, 0.5);
    }
    REQUIRE(est.predict(e1, 0, 0).has_value());
    // orthogonal direction untouched: ||Q e2|| = 1
    CHECK(est.predict(e2, 0, 0) == std::nullopt);
  }

  SUBCASE("knownness is directional: scaling down preserves it") {
    Rng rng(4);
    while (!est.predict(e1, 0, 0)) est.update(e1, 0, 0, rng.uniform_index(2), 0.5);
    for (double lambda : {1.0, 0.7, 0.2, 0.01}) {
      CHECK(est.predict(Context{{lambda, 0.0}}, 0, 0).has_value());
    }
  }
}

TEST_CASE("prediction matches the empirical frequency for a repeated context") {
  const double p0 = 0.3;  // Bernoulli next-state distribution
  KwikEstimator est(2, 1, 2, 0.05);
  Rng rng(9);
  const Context e1{{1.0, 0.0}};
  std::size_t n = 0, heads = 0;
  while (!est.predict(e1, 0, 0)) {
    const std::size_t s_next = rng.uniform() < p0 ? 0 : 1;
    heads += s_next == 0 ? 1 : 0;
    est.update(e1, 0, 0, s_next, 0.5);
    n += 1;
  }
  const auto pred = est.predict(e1, 0, 0);
  REQUIRE(pred.has_value());
  // ridge shrinkage: prediction = (n/(n+1)) * empirical frequency
  const double shrink = static_cast<double>(n) / static_cast<double>(n + 1);
  const double expected0 = shrink * static_cast<double>(heads) / static_cast<double>(n);
  CHECK(pred->transition[0] == doctest::Approx(expected0).epsilon(1e-9));
  CHECK(pred->reward == doctest::Approx(shrink * 0.5).epsilon(1e-9));
}

TEST_CASE("update gate closes and stays closed on a fixed context") {
  KwikEstimator est(2, 1, 2, 0.05);
  Rng rng(11);
  const Context c{{0.6, 0.4}};
  std::size_t updates = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t before = est.update_count(0, 0);
    est.update(c, 0, 0, rng.uniform_index(2), 0.5);
    updates += est.update_count(0, 0) - before;
  }
  CHECK(updates < 500);  // the gate closed at some point
  const std::size_t settled = est.update_count(0, 0);
  for (int t = 0; t < 100; ++t) est.update(c, 0, 0, rng.uniform_index(2), 0.5);
  CHECK(est.update_count(0, 0) == settled);  // never fires again
}

TEST_CASE("c^T Q c decreases monotonically along the updated direction") {
  KwikEstimator est(2, 1, 3, 1e-12);
  Rng rng(12);
  const Context c{{0.5, 0.3, 0.2}};
  const Eigen::Map<const Eigen::VectorXd> cv(c.coords.data(), 3);
  double prev = cv.dot(est.inverse_covariance(0, 0) * cv);
  for (int t = 0; t < 50; ++t) {
    est.update(c, 0, 0, rng.uniform_index(2), 0.1);
    const double cur = cv.dot(est.inverse_covariance(0, 0) * cv);
    CHECK(cur <= prev + 1e-15);
    prev = cur;
  }
}

TEST_CASE("Q stays symmetric positive definite with eigenvalues in (0, 1]") {
  KwikEstimator est(1, 1, 4, 1e-12);
  Rng rng(13);
  for (int t = 0; t < 300; ++t) {
    Context c{std::vector<double>(4)};
    for (auto& x : c.coords) x = rng.uniform(-1.0, 1.0);
    est.update(c, 0, 0, 0, rng.uniform());
  }
  const auto& Q = est.inverse_covariance(0, 0);
  CHECK((Q - Q.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Q);
  CHECK(eig.eigenvalues().minCoeff() > 0.0);
  CHECK(eig.eigenvalues().maxCoeff() <= 1.0 + 1e-12);
}

TEST_CASE("reward predictions are clipped to [0, 1]") {
  KwikEstimator est(1, 1, 1, 0.5);
  // single dimension: repeated context 1.0 with reward 1.0
  for (int t = 0; t < 10; ++t) est.update(Context{{1.0}}, 0, 0, 0, 1.0);
  const auto pred = est.predict(Context{{1.0}}, 0, 0);
  REQUIRE(pred.has_value());
  CHECK(pred->reward >= 0.0);
  CHECK(pred->reward <= 1.0);
}

TEST_CASE("l1-norm gate is selectable and stricter than l2") {
  KwikEstimator l2(1, 1, 3, 0.4, KwikNorm::L2);
  KwikEstimator l1(1, 1, 3, 0.4, KwikNorm::L1);
  const Context c{{0.5, 0.5, 0.0}};
  // fresh Q = I: ||c||_2 = 0.707 > 0.4, ||c||_1 = 1 > 0.4 -> both unknown
  CHECK(l2.predict(c, 0, 0) == std::nullopt);
  CHECK(l1.predict(c, 0, 0) == std::nullopt);
  const Context small{{0.3, 0.2, 0.0}};
  // ||small||_2 = 0.36 <= 0.4 but ||small||_1 = 0.5 > 0.4
  CHECK(l2.predict(small, 0, 0).has_value());
  CHECK(l1.predict(small, 0, 0) == std::nullopt);
}

TEST_CASE("kwik snapshot round-trips") {
  KwikEstimator est(3, 2, 2, 0.01);
  Rng rng(21);
  for (int t = 0; t < 60; ++t) {
    Context c{{rng.uniform(), rng.uniform()}};
    est.update(c, rng.uniform_index(3), rng.uniform_index(2), rng.uniform_index(3),
               rng.uniform());
  }
  const auto snapshot = est.snapshot();
  const auto restored = KwikEstimator::from_snapshot(snapshot);
  CHECK(restored.snapshot() == snapshot);
  CHECK(restored.update_count() == est.update_count());
}
