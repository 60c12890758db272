#include "robustprec/scale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include <boost/math/distributions/normal.hpp>

#include "robustprec/kernels.hpp"
#include "robustprec/rng.hpp"

namespace robustprec {

namespace {

const boost::math::normal_distribution<double> kStdNormal;

double normal_quantile(double q) { return boost::math::quantile(kStdNormal, q); }
double normal_cdf(double x) { return boost::math::cdf(kStdNormal, x); }
double normal_pdf(double x) { return boost::math::pdf(kStdNormal, x); }

// 1 / Phi^{-1}(3/4): MAD consistency.
double mad_constant() {
  static const double c = 1.0 / normal_quantile(0.75);
  return c;
}

// E[min(Z^2, c^2)] for Z ~ N(0,1).
double truncated_second_moment(double c) {
  return (2.0 * normal_cdf(c) - 1.0) - 2.0 * c * normal_pdf(c) +
         c * c * 2.0 * (1.0 - normal_cdf(c));
}

std::vector<double> sorted_copy(std::span<const double> x) {
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

const char* to_string(ScaleKind kind) {
  switch (kind) {
    case ScaleKind::MAD: return "mad";
    case ScaleKind::IQR: return "iqr";
    case ScaleKind::QN: return "qn";
    case ScaleKind::TAU: return "tau";
    case ScaleKind::PN: return "pn";
    case ScaleKind::PN_TRIMMED: return "pn-trimmed";
  }
  return "?";
}

ScaleKind scale_kind_from_string(const std::string& name) {
  if (name == "mad") return ScaleKind::MAD;
  if (name == "iqr") return ScaleKind::IQR;
  if (name == "qn") return ScaleKind::QN;
  if (name == "tau") return ScaleKind::TAU;
  if (name == "pn") return ScaleKind::PN;
  if (name == "pn-trimmed" || name == "pn_trimmed") return ScaleKind::PN_TRIMMED;
  throw InvalidInput("unknown scale estimator: " + name);
}

void ScaleSpec::validate() const {
  if (!(trim_d > 0.0)) throw InvalidInput("ScaleSpec: trim_d must be > 0");
  if (!(tau_c1 > tau_c2) || !(tau_c2 > 0.0))
    throw InvalidInput("ScaleSpec: need tau_c1 > tau_c2 > 0");
}

namespace detail {

void validate_sample(std::span<const double> x) {
  if (x.size() < 2) throw InvalidInput("sample too short: need n >= 2");
  for (double v : x)
    if (!std::isfinite(v)) throw InvalidInput("sample contains a non-finite value");
}

double quantile_sorted(std::span<const double> sorted, double q) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  q = std::clamp(q, 0.0, 1.0);
  const double h = q * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double median_of(std::span<const double> x) {
  auto s = sorted_copy(x);
  return quantile_sorted(s, 0.5);
}

double kth_pairwise_abs_diff_enum(std::span<const double> x, std::uint64_t k) {
  const std::size_t n = x.size();
  std::vector<double> diffs(n * (n - 1) / 2);
  std::size_t off = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    kernels::abs_dev(x.data() + i + 1, n - 1 - i, x[i], diffs.data() + off);
    off += n - 1 - i;
  }
  std::nth_element(diffs.begin(), diffs.begin() + static_cast<std::ptrdiff_t>(k - 1), diffs.end());
  return diffs[k - 1];
}

namespace {

// Number of pairs (i<j) in sorted x with x_j - x_i <= t.
std::uint64_t count_diffs_le(const std::vector<double>& x, double t) {
  std::uint64_t cnt = 0;
  std::size_t lb = 0;
  for (std::size_t j = 1; j < x.size(); ++j) {
    // first i with x[j] - x[i] <= t; threshold nondecreasing in j
    while (lb < j && x[j] - x[lb] > t) ++lb;
    cnt += j - lb;
  }
  return cnt;
}

// Number of pairs (i<j) in sorted x with (x_i + x_j)/2 <= t.
std::uint64_t count_means_le(const std::vector<double>& x, double t) {
  std::uint64_t cnt = 0;
  const std::size_t n = x.size();
  std::size_t lo = 0, hi = n - 1;
  while (lo < hi) {
    if (0.5 * (x[lo] + x[hi]) <= t) {
      cnt += hi - lo;
      ++lo;
    } else {
      --hi;
    }
  }
  return cnt;
}

constexpr std::uint64_t kCollectCap = std::uint64_t{1} << 22;

// Exact k-th order statistic by bisection on the value, followed by explicit
// collection of the surviving candidates. `count_le(t)` must be monotone and
// `collect(lo, hi, out)` must append exactly the values v with lo < v <= hi.
template <class CountFn, class CollectFn>
double select_kth(double lo0, double hi0, std::uint64_t k, CountFn count_le, CollectFn collect) {
  double lo = lo0, hi = hi0;
  std::uint64_t cnt_lo = count_le(lo);
  if (cnt_lo >= k) return lo;  // at least k values tie at the lower bound
  std::uint64_t cnt_hi = count_le(hi);
  for (int iter = 0; iter < 200 && cnt_hi - cnt_lo > kCollectCap; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo) || !(mid < hi)) break;  // interval exhausted at fp resolution
    const std::uint64_t c = count_le(mid);
    if (c >= k) {
      hi = mid;
      cnt_hi = c;
    } else {
      lo = mid;
      cnt_lo = c;
    }
  }
  if (cnt_hi - cnt_lo > kCollectCap) return hi;  // massive ties within one ulp
  std::vector<double> cand;
  cand.reserve(static_cast<std::size_t>(cnt_hi - cnt_lo));
  collect(lo, hi, cand);
  const std::uint64_t rank = k - cnt_lo;  // 1-based within cand
  std::nth_element(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(rank - 1), cand.end());
  return cand[rank - 1];
}

}  // namespace

double kth_pairwise_abs_diff_select(std::span<const double> x, std::uint64_t k) {
  const auto s = sorted_copy(x);
  const double max_diff = s.back() - s.front();
  return select_kth(
      0.0, max_diff, k, [&](double t) { return count_diffs_le(s, t); },
      [&](double lo, double hi, std::vector<double>& out) {
        std::size_t lb_hi = 0, lb_lo = 0;
        for (std::size_t j = 1; j < s.size(); ++j) {
          while (lb_hi < j && s[j] - s[lb_hi] > hi) ++lb_hi;
          while (lb_lo < j && s[j] - s[lb_lo] > lo) ++lb_lo;
          for (std::size_t i = lb_hi; i < lb_lo; ++i) out.push_back(s[j] - s[i]);
        }
      });
}

double kth_pairwise_mean_select(std::span<const double> x, std::uint64_t k) {
  const auto s = sorted_copy(x);
  const std::size_t n = s.size();
  const double lo0 = 0.5 * (s[0] + s[1]);
  const double hi0 = 0.5 * (s[n - 2] + s[n - 1]);
  // nextafter below the minimum so count_le(lo0) counts ties at the minimum.
  const double below = std::nextafter(lo0, -std::numeric_limits<double>::infinity());
  return select_kth(
      below, hi0, k, [&](double t) { return count_means_le(s, t); },
      [&](double lo, double hi, std::vector<double>& out) {
        for (std::size_t j = 1; j < n; ++j) {
          // i-range with lo < (s_i + s_j)/2 <= hi; means nondecreasing in i
          const double* base = s.data();
          auto first = std::partition_point(base, base + j, [&](const double& v) {
            return 0.5 * (v + s[j]) <= lo;
          });
          auto last = std::partition_point(first, base + j, [&](const double& v) {
            return 0.5 * (v + s[j]) <= hi;
          });
          for (auto p = first; p != last; ++p) out.push_back(0.5 * (*p + s[j]));
        }
      });
}

namespace {

// Interquartile range of m implicitly defined order statistics, fetched
// through `kth` (1-based).
template <class KthFn>
double iqr_of_order_stats(std::uint64_t m, KthFn kth) {
  if (m == 1) return 0.0;
  auto one_quartile = [&](double q) {
    const double h = q * static_cast<double>(m - 1);
    const std::uint64_t lo = static_cast<std::uint64_t>(h);
    const double frac = h - static_cast<double>(lo);
    const double v_lo = kth(lo + 1);
    if (frac == 0.0 || lo + 2 > m) return v_lo;
    const double v_hi = kth(lo + 2);
    return v_lo + frac * (v_hi - v_lo);
  };
  return one_quartile(0.75) - one_quartile(0.25);
}

}  // namespace

double pairwise_mean_iqr_enum(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> means(n * (n - 1) / 2);
  std::size_t off = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    kernels::pair_mean(x.data() + i + 1, n - 1 - i, x[i], means.data() + off);
    off += n - 1 - i;
  }
  std::sort(means.begin(), means.end());
  return quantile_sorted(means, 0.75) - quantile_sorted(means, 0.25);
}

double pairwise_mean_iqr_select(std::span<const double> x) {
  const std::uint64_t n = x.size();
  const std::uint64_t m = n * (n - 1) / 2;
  return iqr_of_order_stats(m, [&](std::uint64_t k) { return kth_pairwise_mean_select(x, k); });
}

double pairwise_mean_iqr(std::span<const double> x) {
  return x.size() <= kPairEnumerationCutoff ? pairwise_mean_iqr_enum(x)
                                            : pairwise_mean_iqr_select(x);
}

double pn_trimmed_constant(double d) {
  static std::mutex mu;
  static std::map<double, double> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
  }
  // S = (X1 + X2)/2 with X_i iid N(0,1) truncated to [-d, d].
  // F_S(s) = int F_X(2s - y) f_X(y) dy; solve F_S(q) = 3/4, constant = 1/(2q).
  const double mass = 2.0 * normal_cdf(d) - 1.0;
  auto trunc_cdf = [&](double v) {
    if (v <= -d) return 0.0;
    if (v >= d) return 1.0;
    return (normal_cdf(v) - normal_cdf(-d)) / mass;
  };
  auto cdf_s = [&](double s) {
    // Simpson's rule over y in [-d, d]
    const int panels = 4096;
    const double h = 2.0 * d / panels;
    double acc = 0.0;
    for (int i = 0; i <= panels; ++i) {
      const double y = -d + i * h;
      const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      acc += w * trunc_cdf(2.0 * s - y) * normal_pdf(y);
    }
    return acc * h / (3.0 * mass);
  };
  double lo = 0.0, hi = d;
  for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (cdf_s(mid) < 0.75 ? lo : hi) = mid;
  }
  const double q75 = 0.5 * (lo + hi);
  const double c = 1.0 / (2.0 * q75);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(d, c);
  return c;
}

namespace {

double mad_raw(std::span<const double> x) {
  const double med = median_of(x);
  std::vector<double> dev(x.size());
  kernels::abs_dev(x.data(), x.size(), med, dev.data());
  return median_of(dev);
}

double qn_raw(std::span<const double> x) {
  const std::uint64_t n = x.size();
  const std::uint64_t h = n / 2 + 1;
  const std::uint64_t k = h * (h - 1) / 2;
  return n <= kPairEnumerationCutoff ? kth_pairwise_abs_diff_enum(x, k)
                                     : kth_pairwise_abs_diff_select(x, k);
}

double tau_raw(std::span<const double> x, double c1, double c2) {
  const double med = median_of(x);
  const double s0 = mad_constant() * mad_raw(x);
  if (s0 == 0.0) return 0.0;
  double wsum = 0.0, wxsum = 0.0;
  kernels::bisquare_weight_sums(x.data(), x.size(), med, 1.0 / (c1 * s0), &wsum, &wxsum);
  const double loc = wxsum / wsum;
  const double rho = kernels::trunc_square_sum(x.data(), x.size(), loc, 1.0 / s0, c2 * c2);
  return s0 * std::sqrt(rho / static_cast<double>(x.size()));
}

double pn_trimmed_raw(std::span<const double> x, double d, bool* fell_back) {
  const double med = median_of(x);
  const double s = mad_constant() * mad_raw(x);
  std::vector<double> kept;
  kept.reserve(x.size());
  for (double v : x)
    if (std::fabs(v - med) <= d * s) kept.push_back(v);
  if (kept.size() < 2) {
    *fell_back = true;
    return pairwise_mean_iqr(x);
  }
  *fell_back = false;
  return pairwise_mean_iqr(kept);
}

}  // namespace

double raw_estimate(std::span<const double> x, const ScaleSpec& spec) {
  switch (spec.kind) {
    case ScaleKind::MAD:
      return mad_raw(x);
    case ScaleKind::IQR: {
      const auto s = sorted_copy(x);
      return quantile_sorted(s, 0.75) - quantile_sorted(s, 0.25);
    }
    case ScaleKind::QN:
      return qn_raw(x);
    case ScaleKind::TAU:
      return tau_raw(x, spec.tau_c1, spec.tau_c2);
    case ScaleKind::PN:
      return pairwise_mean_iqr(x);
    case ScaleKind::PN_TRIMMED: {
      bool fell_back = false;
      return pn_trimmed_raw(x, spec.trim_d, &fell_back);
    }
  }
  throw InvalidInput("unknown scale kind");
}

}  // namespace detail

double consistency_constant(const ScaleSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ScaleKind::MAD:
      return mad_constant();
    case ScaleKind::IQR:
      return 0.5 * mad_constant();
    case ScaleKind::QN:
      return 2.2219;
    case ScaleKind::TAU:
      return 1.0 / std::sqrt(truncated_second_moment(spec.tau_c2));
    case ScaleKind::PN:
      return std::sqrt(2.0) * 0.5 * mad_constant();
    case ScaleKind::PN_TRIMMED:
      return detail::pn_trimmed_constant(spec.trim_d);
  }
  throw InvalidInput("unknown scale kind");
}

double mad(std::span<const double> x) {
  detail::validate_sample(x);
  return mad_constant() * detail::mad_raw(x);
}

double iqr(std::span<const double> x) {
  detail::validate_sample(x);
  const auto s = sorted_copy(x);
  return 0.5 * mad_constant() *
         (detail::quantile_sorted(s, 0.75) - detail::quantile_sorted(s, 0.25));
}

double qn(std::span<const double> x) {
  detail::validate_sample(x);
  return 2.2219 * detail::qn_raw(x);
}

double tau_scale(std::span<const double> x, double c1, double c2) {
  detail::validate_sample(x);
  if (!(c1 > c2) || !(c2 > 0.0)) throw InvalidInput("tau_scale: need c1 > c2 > 0");
  ScaleSpec spec{ScaleKind::TAU, 3.0, c1, c2};
  return consistency_constant(spec) * detail::tau_raw(x, c1, c2);
}

double pn(std::span<const double> x) {
  detail::validate_sample(x);
  ScaleSpec spec{ScaleKind::PN};
  return consistency_constant(spec) * detail::pairwise_mean_iqr(x);
}

double pn_trimmed(std::span<const double> x, double d) {
  detail::validate_sample(x);
  if (!(d > 0.0)) throw InvalidInput("pn_trimmed: need d > 0");
  bool fell_back = false;
  const double raw = detail::pn_trimmed_raw(x, d, &fell_back);
  if (fell_back) return consistency_constant(ScaleSpec{ScaleKind::PN}) * raw;
  return detail::pn_trimmed_constant(d) * raw;
}

double scale_estimate(std::span<const double> x, const ScaleSpec& spec) {
  switch (spec.kind) {
    case ScaleKind::MAD:
      return mad(x);
    case ScaleKind::IQR:
      return iqr(x);
    case ScaleKind::QN:
      return qn(x);
    case ScaleKind::TAU:
      return tau_scale(x, spec.tau_c1, spec.tau_c2);
    case ScaleKind::PN:
      return pn(x);
    case ScaleKind::PN_TRIMMED:
      return pn_trimmed(x, spec.trim_d);
  }
  throw InvalidInput("unknown scale kind");
}

double calibrate_constant(const ScaleSpec& spec, int n_cal, int reps, std::uint64_t seed) {
  spec.validate();
  if (n_cal < 1000) throw InvalidInput("calibrate_constant: need n_cal >= 1000");
  if (reps < 100) throw InvalidInput("calibrate_constant: need reps >= 100");
  Rng rng(mix64(seed));
  std::vector<double> sample(static_cast<std::size_t>(n_cal));
  double mean = 0.0;
  for (int r = 0; r < reps; ++r) {
    for (auto& v : sample) v = rng.normal();
    mean += detail::raw_estimate(sample, spec);
  }
  mean /= static_cast<double>(reps);
  if (mean <= 0.0) throw Error("calibrate_constant: degenerate raw estimator mean");
  return 1.0 / mean;
}

}  // namespace robustprec
