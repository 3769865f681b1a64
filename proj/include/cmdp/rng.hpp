#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace cmdp {

/// Seeded random source used throughout the library.
///
/// Wraps std::mt19937_64 but generates doubles and discrete samples through
/// explicit bit manipulation, so a given seed produces the same stream on
/// every standard-conforming platform (the distributions in <random> are
/// implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : base_seed_(seed), gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in {0, ..., n-1}.
  std::size_t uniform_index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
    // rejection sampling to avoid modulo bias
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
  }

  /// Samples an index proportionally to the given nonnegative weights.
  /// Weights are renormalized by their sum, so rows that sum to 1 - 1e-10
  /// still sample correctly.
  std::size_t sample_discrete(const std::vector<double>& weights) {
    return sample_discrete(weights.data(), weights.size());
  }

  std::size_t sample_discrete(const double* weights, std::size_t n) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += weights[i];
    if (!(total > 0.0))
      throw std::invalid_argument("sample_discrete: weights must have positive sum");
    double u = uniform() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += weights[i];
      if (u < acc) return i;
    }
    // u landed in the rounding slack at the top of the CDF
    for (std::size_t i = n; i-- > 0;) {
      if (weights[i] > 0.0) return i;
    }
    return n - 1;
  }

  /// Uniform sample from the probability simplex (exponential spacings).
  std::vector<double> sample_simplex(std::size_t dim) {
    std::vector<double> v(dim);
    double total = 0.0;
    for (auto& x : v) {
      // -log(1-u) with u in [0,1) keeps the argument strictly positive
      x = -std::log1p(-uniform());
      total += x;
    }
    for (auto& x : v) x /= total;
    return v;
  }

  /// Dirichlet(alpha, ..., alpha) sample via Gamma(alpha) marginals.
  std::vector<double> sample_dirichlet(std::size_t dim, double alpha) {
    std::vector<double> v(dim);
    double total = 0.0;
    for (auto& x : v) {
      x = sample_gamma(alpha);
      total += x;
    }
    if (total <= 0.0) {
      // all gammas underflowed; fall back to a point mass
      std::fill(v.begin(), v.end(), 0.0);
      v[uniform_index(dim)] = 1.0;
      return v;
    }
    for (auto& x : v) x /= total;
    return v;
  }

  /// Derives an independent stream for a substream id. Mixing follows
  /// splitmix64 so nearby ids decorrelate.
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  Rng split(std::uint64_t stream) const {
    return Rng(derive_seed(base_seed_, stream));
  }

 private:
  double sample_gamma(double alpha) {
    // Marsaglia-Tsang; boosted for alpha < 1
    if (alpha < 1.0) {
      double u = uniform();
      while (u <= 0.0) u = uniform();
      return sample_gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = gaussian();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      double u = uniform();
      while (u <= 0.0) u = uniform();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
  }

  double gaussian() {
    // Box-Muller on explicit uniforms
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  std::uint64_t base_seed_ = 0;
  std::mt19937_64 gen_;
};

}  // namespace cmdp
