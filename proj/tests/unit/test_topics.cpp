#include "cascade/topics.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "cascade/common.hpp"
#include "cascade/rng.hpp"
#include "doctest.h"

using namespace cascade;

namespace {

std::vector<std::string> number_vocab(size_t v) {
  std::vector<std::string> out;
  for (size_t i = 0; i < v; ++i) out.push_back("w" + std::to_string(i));
  return out;
}

// 500 documents drawn from two disjoint 50-word halves of a 100-word
// vocabulary; the fit should rediscover the halves.
struct Planted {
  std::vector<std::vector<int32_t>> docs;
  LdaResult fit;
};

const Planted& planted_corpus() {
  static const Planted p = [] {
    Planted out;
    std::mt19937_64 g(99);
    for (int d = 0; d < 500; ++d) {
      const int32_t base = (d % 2 == 0) ? 0 : 50;
      std::vector<int32_t> doc(20);
      for (auto& w : doc) {
        w = base + static_cast<int32_t>(uniform_below(g, 50));
      }
      out.docs.push_back(std::move(doc));
    }
    out.fit = fit_lda(out.docs, number_vocab(100), 2, 0.1, 0.01, 200, 42,
                      true);
    return out;
  }();
  return p;
}

double half_mass(const TopicModel& m, int32_t t, bool first_half) {
  double mass = 0.0;
  const size_t lo = first_half ? 0 : 50;
  for (size_t w = lo; w < lo + 50; ++w) mass += m.phi(t, w);
  return mass;
}

}  // namespace

TEST_CASE("single-topic fit degenerates to smoothed word frequencies") {
  const LdaResult r =
      fit_lda({{0, 1, 0}, {2}}, number_vocab(3), 1, 50.0, 0.01, 10, 1);
  REQUIRE(r.doc_topics.size() == 2);
  CHECK(r.doc_topics[0].theta == std::vector<double>{1.0});
  CHECK(r.doc_topics[1].theta == std::vector<double>{1.0});
  CHECK(r.model.phi(0, 0) == doctest::Approx(2.01 / 4.03).epsilon(1e-12));
  CHECK(r.model.phi(0, 1) == doctest::Approx(1.01 / 4.03).epsilon(1e-12));
  CHECK(r.model.phi(0, 2) == doctest::Approx(1.01 / 4.03).epsilon(1e-12));
}

TEST_CASE("phi and theta rows are normalized") {
  std::mt19937_64 g(3);
  std::vector<std::vector<int32_t>> docs;
  for (int d = 0; d < 30; ++d) {
    std::vector<int32_t> doc(1 + uniform_below(g, 15));
    for (auto& w : doc) w = static_cast<int32_t>(uniform_below(g, 12));
    docs.push_back(std::move(doc));
  }
  const LdaResult r = fit_lda(docs, number_vocab(12), 3, 0.5, 0.01, 50, 7);
  for (int32_t t = 0; t < 3; ++t) {
    double sum = 0.0;
    for (size_t w = 0; w < 12; ++w) {
      CHECK(r.model.phi(t, w) >= 0.0);
      sum += r.model.phi(t, w);
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);
  }
  for (const auto& dt : r.doc_topics) {
    const double sum = std::accumulate(dt.theta.begin(), dt.theta.end(), 0.0);
    CHECK(std::abs(sum - 1.0) <= 1e-9);
    for (double v : dt.theta) CHECK(v >= 0.0);
  }
}

TEST_CASE("two-topic fit separates a planted vocabulary split") {
  const TopicModel& m = planted_corpus().fit.model;
  const double a0 = half_mass(m, 0, true);
  const double a1 = half_mass(m, 1, true);
  // each topic concentrates on one half, and they pick different halves
  CHECK(std::max(a0, 1.0 - a0) >= 0.9);
  CHECK(std::max(a1, 1.0 - a1) >= 0.9);
  CHECK(((a0 >= 0.5) != (a1 >= 0.5)));
}

TEST_CASE("documents land on their planted topic") {
  const Planted& p = planted_corpus();
  const int32_t topic_a = half_mass(p.fit.model, 0, true) >= 0.5 ? 0 : 1;
  size_t hits = 0;
  for (size_t d = 0; d < p.docs.size(); ++d) {
    const int32_t want = (d % 2 == 0) ? topic_a : 1 - topic_a;
    const auto& theta = p.fit.doc_topics[d].theta;
    if (theta[static_cast<size_t>(want)] > 0.5) ++hits;
  }
  CHECK(static_cast<double>(hits) / static_cast<double>(p.docs.size()) >= 0.9);
}

TEST_CASE("training log-likelihood improves over the run") {
  const std::vector<double>& ll = planted_corpus().fit.log_likelihood;
  REQUIRE(ll.size() == 200);
  double tail = 0.0;
  for (size_t i = 180; i < 200; ++i) tail += ll[i];
  tail /= 20.0;
  CHECK(tail > ll.front());
}

TEST_CASE("fit is bit-identical across reruns") {
  const std::vector<std::vector<int32_t>> docs = {{0, 1, 2, 0}, {3, 3, 1}, {2}};
  const LdaResult a = fit_lda(docs, number_vocab(4), 2, 0.3, 0.05, 40, 17);
  const LdaResult b = fit_lda(docs, number_vocab(4), 2, 0.3, 0.05, 40, 17);
  REQUIRE(a.model.phi_vk.size() == b.model.phi_vk.size());
  for (size_t i = 0; i < a.model.phi_vk.size(); ++i) {
    CHECK(a.model.phi_vk[i] == b.model.phi_vk[i]);
  }
  for (size_t d = 0; d < docs.size(); ++d) {
    CHECK(a.doc_topics[d].theta == b.doc_topics[d].theta);
  }
}

TEST_CASE("empty documents sit out of sampling with uniform theta") {
  const LdaResult r =
      fit_lda({{0, 1}, {}, {1, 1}}, number_vocab(2), 4, 0.2, 0.01, 20, 5);
  for (double v : r.doc_topics[1].theta) CHECK(v == doctest::Approx(0.25));
}

TEST_CASE("inference recovers the planted topic of a fresh document") {
  const Planted& p = planted_corpus();
  const int32_t topic_a = half_mass(p.fit.model, 0, true) >= 0.5 ? 0 : 1;
  std::vector<int32_t> doc;
  std::mt19937_64 g(123);
  for (int i = 0; i < 25; ++i) {
    doc.push_back(static_cast<int32_t>(uniform_below(g, 50)));
  }
  const DocTopics dt = infer_topics(p.fit.model, doc, 100, 8);
  CHECK(dt.theta[static_cast<size_t>(topic_a)] >= 0.8);

  const DocTopics again = infer_topics(p.fit.model, doc, 100, 8);
  CHECK(dt.theta == again.theta);
}

TEST_CASE("inference on an empty document returns the flat prior") {
  const TopicModel& m = planted_corpus().fit.model;
  const DocTopics dt = infer_topics(m, {}, 50, 3);
  for (double v : dt.theta) CHECK(v == doctest::Approx(0.5));
}

TEST_CASE("degenerate fit inputs are rejected") {
  CHECK_THROWS_AS(fit_lda({{0}}, number_vocab(1), 0, 1.0, 0.01, 10, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit_lda({}, number_vocab(1), 2, 1.0, 0.01, 10, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit_lda({{5}}, number_vocab(2), 2, 1.0, 0.01, 10, 1),
                  std::invalid_argument);
}

TEST_CASE("model files round-trip") {
  const LdaResult r =
      fit_lda({{0, 1, 2}, {2, 2, 0}}, number_vocab(3), 2, 0.4, 0.02, 30, 9);
  const std::string path = "lda_roundtrip.bin";
  save_model(path, r.model);
  const TopicModel loaded = load_model(path);
  std::remove(path.c_str());
  CHECK(loaded.k == r.model.k);
  CHECK(loaded.alpha == r.model.alpha);
  CHECK(loaded.beta == r.model.beta);
  CHECK(loaded.iterations == r.model.iterations);
  CHECK(loaded.seed == r.model.seed);
  CHECK(loaded.vocab == r.model.vocab);
  REQUIRE(loaded.phi_vk.size() == r.model.phi_vk.size());
  for (size_t i = 0; i < loaded.phi_vk.size(); ++i) {
    CHECK(loaded.phi_vk[i] == r.model.phi_vk[i]);
  }
}

TEST_CASE("default hyperparameters") {
  CHECK(lda_default_alpha(20) == doctest::Approx(2.5));
  CHECK(kLdaDefaultBeta == 0.01);
  CHECK(kLdaDefaultIterations == 1000);
}
