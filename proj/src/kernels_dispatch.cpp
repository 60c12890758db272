#include "robustprec/kernels.hpp"

namespace robustprec::kernels {

double (*sum)(const double*, std::size_t) = scalar::sum;
double (*dot)(const double*, const double*, std::size_t) = scalar::dot;
double (*sumsq_centered)(const double*, std::size_t, double) = scalar::sumsq_centered;
void (*axpy)(double, const double*, double*, std::size_t) = scalar::axpy;
void (*combine)(double, const double*, double, const double*, double*, std::size_t) = scalar::combine;
void (*pair_mean)(const double*, std::size_t, double, double*) = scalar::pair_mean;
void (*abs_dev)(const double*, std::size_t, double, double*) = scalar::abs_dev;
void (*bisquare_weight_sums)(const double*, std::size_t, double, double, double*, double*) =
    scalar::bisquare_weight_sums;
double (*trunc_square_sum)(const double*, std::size_t, double, double, double) =
    scalar::trunc_square_sum;

namespace {
Backend g_backend = Backend::Scalar;
}

bool cpu_supports_avx2() {
#if defined(ROBUSTPREC_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

void force_backend(Backend b) {
#if defined(ROBUSTPREC_HAVE_AVX2)
  if (b == Backend::Avx2 && cpu_supports_avx2()) {
    sum = avx2::sum;
    dot = avx2::dot;
    sumsq_centered = avx2::sumsq_centered;
    axpy = avx2::axpy;
    combine = avx2::combine;
    pair_mean = avx2::pair_mean;
    abs_dev = avx2::abs_dev;
    bisquare_weight_sums = avx2::bisquare_weight_sums;
    trunc_square_sum = avx2::trunc_square_sum;
    g_backend = Backend::Avx2;
    return;
  }
#endif
  sum = scalar::sum;
  dot = scalar::dot;
  sumsq_centered = scalar::sumsq_centered;
  axpy = scalar::axpy;
  combine = scalar::combine;
  pair_mean = scalar::pair_mean;
  abs_dev = scalar::abs_dev;
  bisquare_weight_sums = scalar::bisquare_weight_sums;
  trunc_square_sum = scalar::trunc_square_sum;
  g_backend = Backend::Scalar;
}

Backend active_backend() { return g_backend; }

namespace {
// Bind the widest supported backend before main() runs.
struct Init {
  Init() { force_backend(cpu_supports_avx2() ? Backend::Avx2 : Backend::Scalar); }
};
const Init g_init;
}  // namespace

}  // namespace robustprec::kernels
