#include "cascade/kernels.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "cascade/rng.hpp"
#include "doctest.h"

using namespace cascade;

namespace {

std::vector<double> random_values(std::mt19937_64& g, size_t n) {
  std::vector<double> v(n);
  for (size_t i = 0; i < n; ++i) {
    // Spread magnitudes so reduction order actually matters.
    const double mag = std::pow(10.0, static_cast<double>(uniform_below(g, 7)) - 3.0);
    v[i] = (uniform_unit(g) - 0.5) * mag;
  }
  return v;
}

}  // namespace

TEST_CASE("scalar reductions agree with a plain loop") {
  kernels::set_backend(kernels::Backend::scalar);
  std::mt19937_64 g(42);
  for (size_t n : {size_t{0}, size_t{1}, size_t{3}, size_t{4}, size_t{5},
                   size_t{64}, size_t{257}, size_t{1000}}) {
    auto v = random_values(g, n);
    long double ref = 0;
    for (double x : v) ref += x;
    CHECK(kernels::sum(v) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));

    const double m = kernels::mean(v);
    long double sq = 0;
    for (double x : v) sq += (static_cast<long double>(x) - m) * (static_cast<long double>(x) - m);
    CHECK(kernels::sum_sq_dev(v, m) == doctest::Approx(static_cast<double>(sq)).epsilon(1e-10));
  }
}

TEST_CASE("stddev definitions") {
  kernels::set_backend(kernels::Backend::scalar);
  std::vector<double> v{2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0};
  CHECK(kernels::mean(v) == doctest::Approx(5.0));
  CHECK(kernels::stddev_population(v) == doctest::Approx(2.0));
  CHECK(kernels::stddev_sample(v) == doctest::Approx(std::sqrt(32.0 / 7.0)));
  std::vector<double> one{3.5};
  CHECK(kernels::stddev_sample(one) == 0.0);
  CHECK(kernels::stddev_population(one) == 0.0);
  std::vector<double> none;
  CHECK(kernels::mean(none) == 0.0);
}

TEST_CASE("backend names and switching") {
  CHECK(kernels::backend_name(kernels::Backend::scalar) == "scalar");
  CHECK(kernels::backend_name(kernels::Backend::avx2) == "avx2");
  CHECK(kernels::backend_supported(kernels::Backend::scalar));
  kernels::set_backend(kernels::Backend::scalar);
  CHECK(kernels::active_backend() == kernels::Backend::scalar);
}

TEST_CASE("avx2 kernels are bit-identical to scalar") {
  if (!kernels::backend_supported(kernels::Backend::avx2)) {
    MESSAGE("avx2 not available on this host, skipping");
    return;
  }
  std::mt19937_64 g(7);

  for (size_t n = 0; n <= 130; ++n) {
    auto v = random_values(g, n);
    const double center = uniform_unit(g) * 4.0 - 2.0;

    kernels::set_backend(kernels::Backend::scalar);
    const double s_sum = kernels::sum(v);
    const double s_dev = kernels::sum_sq_dev(v, center);

    kernels::set_backend(kernels::Backend::avx2);
    const double a_sum = kernels::sum(v);
    const double a_dev = kernels::sum_sq_dev(v, center);

    CHECK(s_sum == a_sum);
    CHECK(s_dev == a_dev);
  }

  for (int k = 1; k <= 67; ++k) {
    std::vector<int32_t> doc(k), word(k), total(k);
    std::vector<double> phi(k);
    for (int t = 0; t < k; ++t) {
      doc[t] = static_cast<int32_t>(uniform_below(g, 50));
      word[t] = static_cast<int32_t>(uniform_below(g, 900));
      total[t] = 1 + static_cast<int32_t>(uniform_below(g, 100000));
      phi[t] = uniform_unit(g);
    }
    const double alpha = 2.5, beta = 0.01, vbeta = 100.0;
    std::vector<double> out_s(k), out_a(k), inf_s(k), inf_a(k);

    kernels::set_backend(kernels::Backend::scalar);
    kernels::gibbs_weights(doc.data(), word.data(), total.data(), alpha, beta,
                           vbeta, k, out_s.data());
    kernels::infer_weights(phi.data(), doc.data(), alpha, k, inf_s.data());

    kernels::set_backend(kernels::Backend::avx2);
    kernels::gibbs_weights(doc.data(), word.data(), total.data(), alpha, beta,
                           vbeta, k, out_a.data());
    kernels::infer_weights(phi.data(), doc.data(), alpha, k, inf_a.data());

    for (int t = 0; t < k; ++t) {
      CHECK(out_s[t] == out_a[t]);
      CHECK(inf_s[t] == inf_a[t]);
    }
  }
  kernels::set_backend(kernels::Backend::scalar);
}
