#pragma once

#include <span>
#include <vector>

namespace cmdp {

/// Euclidean projection of v onto the probability simplex, by the
/// sort-and-threshold method: with u the entries of v sorted in decreasing
/// order, find the largest rho with u_rho - (sum_{i<=rho} u_i - 1)/rho > 0,
/// set theta to that average gap, and clip each entry to max(v_i - theta, 0).
/// The output is nonnegative and sums to 1 within 1e-12.
std::vector<double> project_simplex(std::span<const double> v);

}  // namespace cmdp
