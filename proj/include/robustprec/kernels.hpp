#pragma once

#include <cstddef>

// Flat-array kernels backing the statistical inner loops: pairwise
// difference/mean enumeration for the scale estimators, the scaled
// sum/difference arrays of the covariance identity, and the dot/axpy
// updates inside the coordinate-descent solver.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2 variant selected at runtime. Elementwise kernels (combine, pair_mean,
// abs_dev, axpy) are bit-identical across backends; reductions (sum, dot,
// sumsq_centered, the weight sums) may differ in the last few ulps because
// wide accumulators reassociate the summation.

namespace robustprec::kernels {

namespace scalar {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
// sum_i (x_i - c)^2
double sumsq_centered(const double* x, std::size_t n, double c);
// y += a * x
void axpy(double a, const double* x, double* y, std::size_t n);
// out = a*x + b*y
void combine(double a, const double* x, double b, const double* y, double* out, std::size_t n);
// out = (x + c) * 0.5
void pair_mean(const double* x, std::size_t n, double c, double* out);
// out = |x - c|
void abs_dev(const double* x, std::size_t n, double c, double* out);
// Tukey bisquare weights about `center` with half-width 1/inv_width:
//   u = (x_i - center) * inv_width; w_i = (1-u^2)^2 for |u| <= 1 else 0.
// Accumulates sum(w) and sum(w*x).
void bisquare_weight_sums(const double* x, std::size_t n, double center, double inv_width,
                          double* wsum, double* wxsum);
// sum_i min(((x_i - center) * inv_scale)^2, clip_sq)
double trunc_square_sum(const double* x, std::size_t n, double center, double inv_scale,
                        double clip_sq);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define ROBUSTPREC_HAVE_AVX2 1
namespace avx2 {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double sumsq_centered(const double* x, std::size_t n, double c);
void axpy(double a, const double* x, double* y, std::size_t n);
void combine(double a, const double* x, double b, const double* y, double* out, std::size_t n);
void pair_mean(const double* x, std::size_t n, double c, double* out);
void abs_dev(const double* x, std::size_t n, double c, double* out);
void bisquare_weight_sums(const double* x, std::size_t n, double center, double inv_width,
                          double* wsum, double* wxsum);
double trunc_square_sum(const double* x, std::size_t n, double center, double inv_scale,
                        double clip_sq);
}  // namespace avx2
#endif

// Dispatched entry points, bound at startup.
extern double (*sum)(const double*, std::size_t);
extern double (*dot)(const double*, const double*, std::size_t);
extern double (*sumsq_centered)(const double*, std::size_t, double);
extern void (*axpy)(double, const double*, double*, std::size_t);
extern void (*combine)(double, const double*, double, const double*, double*, std::size_t);
extern void (*pair_mean)(const double*, std::size_t, double, double*);
extern void (*abs_dev)(const double*, std::size_t, double, double*);
extern void (*bisquare_weight_sums)(const double*, std::size_t, double, double, double*, double*);
extern double (*trunc_square_sum)(const double*, std::size_t, double, double, double);

enum class Backend { Scalar, Avx2 };

Backend active_backend();
bool cpu_supports_avx2();

// Rebinds the dispatch table; Avx2 silently falls back to Scalar when the
// CPU lacks support. Intended for tests and benchmarking.
void force_backend(Backend b);

}  // namespace robustprec::kernels
