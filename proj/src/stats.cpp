#include "cascade/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cascade/kernels.hpp"

namespace cascade {

Ccdf ccdf(std::vector<double> sample) {
  if (sample.empty()) throw std::invalid_argument("ccdf: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  Ccdf out;
  for (size_t i = 0; i < sample.size();) {
    size_t j = i;
    while (j < sample.size() && sample[j] == sample[i]) ++j;
    out.points.push_back({sample[i], static_cast<double>(sample.size() - i) / n});
    i = j;
  }
  return out;
}

double ks_asymptotic_p(double d, size_t n, size_t m, int max_terms) {
  if (d <= 0.0) return 1.0;
  const double ne = static_cast<double>(n) * static_cast<double>(m) /
                    static_cast<double>(n + m);
  const double sq = std::sqrt(ne);
  const double lambda = (sq + 0.12 + 0.11 / sq) * d;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= max_terms; ++k) {
    const double term =
        sign * std::exp(-2.0 * static_cast<double>(k) * static_cast<double>(k) *
                        lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-12) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> x, std::vector<double> y) {
  if (x.empty() || y.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const size_t n = x.size(), m = y.size();
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < n && j < m) {
    const double v = std::min(x[i], y[j]);
    while (i < n && x[i] == v) ++i;
    while (j < m && y[j] == v) ++j;
    const double diff = std::abs(static_cast<double>(i) / static_cast<double>(n) -
                                 static_cast<double>(j) / static_cast<double>(m));
    d = std::max(d, diff);
  }
  // Once one sample is exhausted its ECDF is pinned at 1; the remaining gap
  // is largest at the first uncovered step of the other sample.
  if (i < n) d = std::max(d, 1.0 - static_cast<double>(i) / static_cast<double>(n));
  if (j < m) d = std::max(d, 1.0 - static_cast<double>(j) / static_cast<double>(m));
  KsResult r;
  r.d_statistic = d;
  r.p_value = ks_asymptotic_p(d, n, m);
  r.n = n;
  r.m = m;
  return r;
}

namespace {

double quantile_sorted(const std::vector<double>& v, double p) {
  const size_t n = v.size();
  if (n == 1) return v[0];
  const double pos = p * static_cast<double>(n - 1);
  const size_t lo = static_cast<size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= n) return v[n - 1];
  return v[lo] + frac * (v[lo + 1] - v[lo]);
}

}  // namespace

SummaryStats summary_stats(std::vector<double> sample, bool log_transform) {
  if (sample.empty()) throw std::invalid_argument("summary_stats: empty sample");
  std::sort(sample.begin(), sample.end());

  SummaryStats s;
  s.count = sample.size();
  s.min = sample.front();
  s.max = sample.back();
  s.q1 = quantile_sorted(sample, 0.25);
  s.median = quantile_sorted(sample, 0.5);
  s.q3 = quantile_sorted(sample, 0.75);

  const double iqr = s.q3 - s.q1;
  const double lo = s.q1 - 1.5 * iqr;
  const double hi = s.q3 + 1.5 * iqr;
  for (double v : sample) {
    if (v < lo || v > hi) ++s.tukey_outlier_count;
  }

  std::vector<double> basis;
  const std::vector<double>* vals = &sample;
  if (log_transform) {
    if (sample.front() < 0.0)
      throw std::domain_error("summary_stats: log transform needs values >= 0");
    basis.reserve(sample.size());
    for (double v : sample) basis.push_back(std::log10(v + 1.0));
    vals = &basis;
  }
  s.mean_log = kernels::mean(*vals);
  s.std_log = kernels::stddev_sample(*vals);
  s.ci95_halfwidth = 1.96 * s.std_log / std::sqrt(static_cast<double>(s.count));
  return s;
}

}  // namespace cascade
