#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cascade {

struct CcdfPoint {
  double value;
  double probability;  // fraction of sample >= value
};

struct Ccdf {
  std::vector<CcdfPoint> points;  // values strictly increasing, probs non-increasing
};

// P(X >= x) at every distinct sample value. Throws std::invalid_argument on
// an empty sample.
Ccdf ccdf(std::vector<double> sample);

struct KsResult {
  double d_statistic = 0.0;
  double p_value = 1.0;
  size_t n = 0;
  size_t m = 0;
};

// Two-sample Kolmogorov-Smirnov. D by a merged scan over both sorted samples,
// p from the asymptotic Kolmogorov series with the standard effective-n
// correction. Throws std::invalid_argument if either sample is empty.
KsResult ks_two_sample(std::vector<double> x, std::vector<double> y);

// p = 2 * sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2),
// lambda = (sqrt(n_e) + 0.12 + 0.11/sqrt(n_e)) * d, n_e = n*m/(n+m).
// Terms are added until one falls below 1e-12 in magnitude (or max_terms is
// hit); the sum is clamped to [0,1]. d == 0 returns exactly 1.
double ks_asymptotic_p(double d, size_t n, size_t m, int max_terms = 10000);

struct SummaryStats {
  size_t count = 0;
  double mean_log = 0.0;  // mean/std on log10(x+1) when log_transform,
  double std_log = 0.0;   // otherwise on the raw values
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  size_t tukey_outlier_count = 0;
  double ci95_halfwidth = 0.0;
};

// Order statistics (min/quartiles/max, Tukey fences) are always taken on the
// raw values; log_transform only moves mean/std/ci to the log10(x+1) scale.
// Quartiles interpolate linearly at position p*(n-1). std is the sample
// (Bessel-corrected) deviation; ci95_halfwidth = 1.96*std/sqrt(n).
// Throws std::invalid_argument on an empty sample and std::domain_error if
// log_transform is requested with a negative value present.
SummaryStats summary_stats(std::vector<double> sample, bool log_transform);

}  // namespace cascade
