// AVX2 kernel variants. Elementwise kernels deliberately use separate
// mul/add (no FMA) so their results match the scalar reference bit for bit;
// reductions use four lanes and only promise ulp-level agreement.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "robustprec/kernels.hpp"

namespace robustprec::kernels::avx2 {

namespace {

inline double hadd(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s2 = _mm_add_pd(lo, hi);
  const __m128d s1 = _mm_add_sd(s2, _mm_unpackhi_pd(s2, s2));
  return _mm_cvtsd_f64(s1);
}

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

}  // namespace

double sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double s = hadd(acc);
  for (; i < n; ++i) s += x[i];
  return s;
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  double s = hadd(acc);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sumsq_centered(const double* x, std::size_t n, double c) {
  const __m256d vc = _mm256_set1_pd(c);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), vc);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double s = hadd(acc);
  for (; i < n; ++i) {
    const double d = x[i] - c;
    s += d * d;
  }
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_add_pd(_mm256_loadu_pd(y + i),
                                    _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, t);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void combine(double a, const double* x, double b, const double* y, double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(x + i)),
                                    _mm256_mul_pd(vb, _mm256_loadu_pd(y + i)));
    _mm256_storeu_pd(out + i, t);
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void pair_mean(const double* x, std::size_t n, double c, double* out) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_add_pd(_mm256_loadu_pd(x + i), vc), half));
  for (; i < n; ++i) out[i] = (x[i] + c) * 0.5;
}

void abs_dev(const double* x, std::size_t n, double c, double* out) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i,
                     _mm256_and_pd(kAbsMask, _mm256_sub_pd(_mm256_loadu_pd(x + i), vc)));
  for (; i < n; ++i) out[i] = std::fabs(x[i] - c);
}

void bisquare_weight_sums(const double* x, std::size_t n, double center, double inv_width,
                          double* wsum, double* wxsum) {
  const __m256d vc = _mm256_set1_pd(center);
  const __m256d vw = _mm256_set1_pd(inv_width);
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d ws = _mm256_setzero_pd();
  __m256d wxs = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xi = _mm256_loadu_pd(x + i);
    const __m256d u = _mm256_mul_pd(_mm256_sub_pd(xi, vc), vw);
    const __m256d u2 = _mm256_mul_pd(u, u);
    const __m256d mask = _mm256_cmp_pd(u2, one, _CMP_LE_OQ);
    const __m256d t = _mm256_sub_pd(one, u2);
    const __m256d w = _mm256_and_pd(mask, _mm256_mul_pd(t, t));
    ws = _mm256_add_pd(ws, w);
    wxs = _mm256_add_pd(wxs, _mm256_mul_pd(w, xi));
  }
  double s_w = hadd(ws), s_wx = hadd(wxs);
  for (; i < n; ++i) {
    const double u = (x[i] - center) * inv_width;
    const double u2 = u * u;
    if (u2 <= 1.0) {
      const double t = 1.0 - u2;
      const double w = t * t;
      s_w += w;
      s_wx += w * x[i];
    }
  }
  *wsum = s_w;
  *wxsum = s_wx;
}

double trunc_square_sum(const double* x, std::size_t n, double center, double inv_scale,
                        double clip_sq) {
  const __m256d vc = _mm256_set1_pd(center);
  const __m256d vs = _mm256_set1_pd(inv_scale);
  const __m256d vclip = _mm256_set1_pd(clip_sq);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d u = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), vc), vs);
    acc = _mm256_add_pd(acc, _mm256_min_pd(_mm256_mul_pd(u, u), vclip));
  }
  double s = hadd(acc);
  for (; i < n; ++i) {
    const double u = (x[i] - center) * inv_scale;
    const double u2 = u * u;
    s += u2 < clip_sq ? u2 : clip_sq;
  }
  return s;
}

}  // namespace robustprec::kernels::avx2

#endif  // x86-64
