#include "cascade/stats.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "cascade/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cascade;

TEST_CASE("ccdf basics") {
  auto c1 = ccdf({5, 5, 5});
  REQUIRE(c1.points.size() == 1);
  CHECK(c1.points[0].value == 5);
  CHECK(c1.points[0].probability == 1.0);

  auto c2 = ccdf({1, 1, 2, 3});
  REQUIRE(c2.points.size() == 3);
  CHECK(c2.points[0].value == 1);
  CHECK(c2.points[0].probability == 1.0);
  CHECK(c2.points[1].value == 2);
  CHECK(c2.points[1].probability == 0.5);
  CHECK(c2.points[2].value == 3);
  CHECK(c2.points[2].probability == 0.25);

  CHECK_THROWS_AS(ccdf({}), std::invalid_argument);
}

TEST_CASE("ccdf is a non-increasing step function starting at 1") {
  std::mt19937_64 g(11);
  std::vector<double> sample;
  for (int i = 0; i < 500; ++i)
    sample.push_back(static_cast<double>(uniform_below(g, 40)));
  auto c = ccdf(sample);
  CHECK(c.points.front().probability == 1.0);
  for (size_t i = 1; i < c.points.size(); ++i) {
    CHECK(c.points[i].value > c.points[i - 1].value);
    CHECK(c.points[i].probability <= c.points[i - 1].probability);
  }
}

TEST_CASE("ks two-sample statistic") {
  auto same = ks_two_sample({1, 2, 3}, {1, 2, 3});
  CHECK(same.d_statistic == 0.0);
  CHECK(same.p_value == 1.0);

  CHECK(ks_two_sample({1, 2}, {3, 4}).d_statistic == 1.0);
  CHECK(ks_two_sample({1, 3}, {2, 4}).d_statistic == 0.5);
  CHECK_THROWS_AS(ks_two_sample({}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ks_two_sample({1.0}, {}), std::invalid_argument);
}

TEST_CASE("ks merged scan equals brute force on random pairs") {
  std::mt19937_64 g(23);
  for (int trial = 0; trial < 100; ++trial) {
    const size_t n = 1 + uniform_below(g, 60);
    const size_t m = 1 + uniform_below(g, 60);
    std::vector<double> x(n), y(m);
    // Integer-valued draws so ties across and within samples are common.
    for (auto& v : x) v = static_cast<double>(uniform_below(g, 20));
    for (auto& v : y) v = static_cast<double>(uniform_below(g, 20));
    const auto r = ks_two_sample(x, y);
    CHECK(r.d_statistic == oracle::ks_brute(x, y));
    CHECK(r.p_value == doctest::Approx(oracle::ks_p_full_series(
                           r.d_statistic, n, m)).epsilon(1e-3));
    CHECK(r.p_value >= 0.0);
    CHECK(r.p_value <= 1.0);
  }
}

TEST_CASE("summary stats") {
  SUBCASE("log transform moves mean to log10(x+1) scale") {
    auto s = summary_stats({1, 3}, true);
    CHECK(s.mean_log == doctest::Approx((std::log10(2.0) + std::log10(4.0)) / 2)
                            .epsilon(1e-12));
    CHECK(s.mean_log == doctest::Approx(0.4515).epsilon(1e-3));
    // Order statistics stay on the raw scale.
    CHECK(s.min == 1.0);
    CHECK(s.max == 3.0);
  }
  SUBCASE("quartiles and tukey fences") {
    auto s = summary_stats({1, 2, 3, 4, 100}, false);
    CHECK(s.q1 == 2.0);
    CHECK(s.median == 3.0);
    CHECK(s.q3 == 4.0);
    CHECK(s.tukey_outlier_count == 1);
  }
  SUBCASE("constant sample") {
    auto s = summary_stats({7, 7, 7}, false);
    CHECK(s.std_log == 0.0);
    CHECK(s.ci95_halfwidth == 0.0);
    CHECK(s.min == 7.0);
    CHECK(s.q1 == 7.0);
    CHECK(s.max == 7.0);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(summary_stats({}, false), std::invalid_argument);
    CHECK_THROWS_AS(summary_stats({-1.0, 2.0}, true), std::domain_error);
  }
  SUBCASE("permutation invariance") {
    auto a = summary_stats({5, 1, 9, 2, 2, 8}, true);
    auto b = summary_stats({2, 8, 5, 2, 1, 9}, true);
    CHECK(a.mean_log == b.mean_log);
    CHECK(a.std_log == b.std_log);
    CHECK(a.q1 == b.q1);
    CHECK(a.q3 == b.q3);
    CHECK(a.tukey_outlier_count == b.tukey_outlier_count);
  }
}
