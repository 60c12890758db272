#include "robustprec/paircov.hpp"

#include <vector>

#include "robustprec/kernels.hpp"

namespace robustprec {

namespace {

double gk_core(std::span<const double> x, std::span<const double> y, const ScaleFn& s,
               std::vector<double>& buf) {
  const double sx = s(x);
  const double sy = s(y);
  if (sx == 0.0 || sy == 0.0) return 0.0;
  const std::size_t n = x.size();
  buf.resize(n);
  kernels::combine(1.0 / sx, x.data(), 1.0 / sy, y.data(), buf.data(), n);
  const double s_sum = s(std::span<const double>(buf));
  kernels::combine(1.0 / sx, x.data(), -1.0 / sy, y.data(), buf.data(), n);
  const double s_diff = s(std::span<const double>(buf));
  return 0.25 * sx * sy * (s_sum * s_sum - s_diff * s_diff);
}

}  // namespace

double gk_cov_pair_with(std::span<const double> x, std::span<const double> y, const ScaleFn& s) {
  if (x.size() != y.size()) throw InvalidInput("gk_cov_pair: length mismatch");
  detail::validate_sample(x);
  detail::validate_sample(y);
  std::vector<double> buf;
  return gk_core(x, y, s, buf);
}

double gk_cov_pair(std::span<const double> x, std::span<const double> y, const ScaleSpec& spec) {
  return gk_cov_pair_with(x, y,
                          [&spec](std::span<const double> v) { return scale_estimate(v, spec); });
}

void validate_data_matrix(const Matrix& x) {
  if (x.rows() < 2 || x.cols() < 2)
    throw InvalidInput("data matrix: need at least 2 rows and 2 columns");
  if (!is_finite(x)) throw InvalidInput("data matrix: non-finite entries");
}

Matrix pairwise_cov_matrix(const Matrix& x, const ScaleSpec& spec) {
  validate_data_matrix(x);
  const Eigen::Index n = x.rows(), p = x.cols();
  auto col = [&](Eigen::Index j) {
    return std::span<const double>(x.col(j).data(), static_cast<std::size_t>(n));
  };
  ScaleFn s = [&spec](std::span<const double> v) { return scale_estimate(v, spec); };

  Matrix out(p, p);
  std::vector<double> buf;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double sj = s(col(j));
    out(j, j) = sj * sj;
  }
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index k = j + 1; k < p; ++k) {
      const double c = gk_core(col(j), col(k), s, buf);
      out(j, k) = c;
      out(k, j) = c;
    }
  }
  return out;
}

Matrix sample_covariance(const Matrix& x) {
  validate_data_matrix(x);
  const Eigen::Index n = x.rows();
  const Matrix centered = x.rowwise() - x.colwise().mean();
  return (centered.transpose() * centered) / static_cast<double>(n - 1);
}

}  // namespace robustprec
