#pragma once

#include <functional>
#include <span>

#include "robustprec/linalg.hpp"
#include "robustprec/scale.hpp"

namespace robustprec {

// Covariance of one pair of variables through the polarization identity:
// with sX = s(x), sY = s(y),
//   cov = (sX*sY/4) * [ s(x/sX + y/sY)^2 - s(x/sX - y/sY)^2 ].
// Returns 0 when either scale is zero. Throws InvalidInput on length
// mismatch or non-finite data.
double gk_cov_pair(std::span<const double> x, std::span<const double> y, const ScaleSpec& spec);

// Same identity with an arbitrary scale functional; extension point (also
// lets tests plug in the classical standard deviation, for which the
// identity recovers the sample covariance exactly).
using ScaleFn = std::function<double(std::span<const double>)>;
double gk_cov_pair_with(std::span<const double> x, std::span<const double> y, const ScaleFn& s);

// Symmetric p x p matrix of pairwise covariances: diagonal s(col_j)^2,
// off-diagonal gk_cov_pair(col_j, col_k). X is n x p, one observation per
// row; requires n >= 2, p >= 2, finite entries. Not guaranteed positive
// semidefinite.
Matrix pairwise_cov_matrix(const Matrix& x, const ScaleSpec& spec);

// Classical sample covariance (mean-centered, divisor n-1).
Matrix sample_covariance(const Matrix& x);

void validate_data_matrix(const Matrix& x);

}  // namespace robustprec
