// Reference kernels. This translation unit is compiled with
// auto-vectorization and FP contraction disabled so the scalar results are
// a stable baseline for the SIMD equivalence tests.

#include <cmath>

#include "robustprec/kernels.hpp"

namespace robustprec::kernels::scalar {

double sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sumsq_centered(const double* x, std::size_t n, double c) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - c;
    s += d * d;
  }
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void combine(double a, const double* x, double b, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void pair_mean(const double* x, std::size_t n, double c, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (x[i] + c) * 0.5;
}

void abs_dev(const double* x, std::size_t n, double c, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::fabs(x[i] - c);
}

void bisquare_weight_sums(const double* x, std::size_t n, double center, double inv_width,
                          double* wsum, double* wxsum) {
  double ws = 0.0, wxs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (x[i] - center) * inv_width;
    const double u2 = u * u;
    if (u2 <= 1.0) {
      const double t = 1.0 - u2;
      const double w = t * t;
      ws += w;
      wxs += w * x[i];
    }
  }
  *wsum = ws;
  *wxsum = wxs;
}

double trunc_square_sum(const double* x, std::size_t n, double center, double inv_scale,
                        double clip_sq) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (x[i] - center) * inv_scale;
    const double u2 = u * u;
    s += u2 < clip_sq ? u2 : clip_sq;
  }
  return s;
}

}  // namespace robustprec::kernels::scalar
