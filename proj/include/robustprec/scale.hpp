#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "robustprec/errors.hpp"

namespace robustprec {

enum class ScaleKind { MAD, IQR, QN, TAU, PN, PN_TRIMMED };

const char* to_string(ScaleKind kind);
ScaleKind scale_kind_from_string(const std::string& name);

// Which robust scale estimator to use, plus its tuning constants.
struct ScaleSpec {
  ScaleKind kind = ScaleKind::QN;
  double trim_d = 3.0;  // adaptive trimming parameter, PN_TRIMMED only
  double tau_c1 = 4.5;
  double tau_c2 = 3.0;

  void validate() const;  // throws InvalidInput
};

// Multiplier that makes the estimator consistent for the standard deviation
// on Gaussian data. Analytic where known (MAD, IQR, PN, TAU); the usual
// 2.2219 for QN; numeric quadrature for the trimmed PN (cached per trim_d).
double consistency_constant(const ScaleSpec& spec);

// Robust scale estimators, all Gaussian-consistency scaled. Every function
// requires n >= 2 and finite entries (throws InvalidInput otherwise),
// returns >= 0, and returns 0 on constant samples.
double mad(std::span<const double> x);
double iqr(std::span<const double> x);
double qn(std::span<const double> x);
double tau_scale(std::span<const double> x, double c1 = 4.5, double c2 = 3.0);
double pn(std::span<const double> x);
double pn_trimmed(std::span<const double> x, double d = 3.0);

double scale_estimate(std::span<const double> x, const ScaleSpec& spec);

// Monte Carlo estimate of the consistency multiplier: the c that makes the
// mean of the un-scaled estimator equal 1 on N(0,1) samples of size n_cal.
// Deterministic given the seed. Requires n_cal >= 1000, reps >= 100.
double calibrate_constant(const ScaleSpec& spec, int n_cal, int reps, std::uint64_t seed);

namespace detail {

// Sample estimate without the consistency multiplier.
double raw_estimate(std::span<const double> x, const ScaleSpec& spec);

// Linear-interpolation quantile at position q*(n-1) on sorted data.
double quantile_sorted(std::span<const double> sorted, double q);
double median_of(std::span<const double> x);

// Samples up to this size enumerate all pairs; larger samples use an exact
// order-statistic selection (value bisection + counting) that avoids the
// O(n^2) buffer. Both paths return the identical order statistic.
inline constexpr std::size_t kPairEnumerationCutoff = 1024;

// k-th smallest (1-based) of {|x_i - x_j| : i < j}.
double kth_pairwise_abs_diff_enum(std::span<const double> x, std::uint64_t k);
double kth_pairwise_abs_diff_select(std::span<const double> x, std::uint64_t k);

// k-th smallest (1-based) of {(x_i + x_j)/2 : i < j}.
double kth_pairwise_mean_select(std::span<const double> x, std::uint64_t k);

// Raw interquartile range of the pairwise means (no consistency scaling).
double pairwise_mean_iqr_enum(std::span<const double> x);
double pairwise_mean_iqr_select(std::span<const double> x);
double pairwise_mean_iqr(std::span<const double> x);

// Consistency multiplier for the trimmed PN at trimming parameter d,
// computed by quadrature on the distribution of the mean of two
// independent +-d truncated standard normals.
double pn_trimmed_constant(double d);

void validate_sample(std::span<const double> x);

}  // namespace detail

}  // namespace robustprec
