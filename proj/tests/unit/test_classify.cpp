#include "cascade/classify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "cascade/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cascade;

namespace {

Dataset make_dataset(std::vector<std::vector<double>> rows,
                     std::vector<int32_t> labels) {
  Dataset d;
  for (size_t i = 0; i < rows[0].size(); ++i) {
    d.feature_names.push_back("f" + std::to_string(i));
  }
  d.rows = std::move(rows);
  d.labels = std::move(labels);
  return d;
}

// rough standard normal: sum of six uniforms, recentred
double gauss(std::mt19937_64& g) {
  double s = 0.0;
  for (int i = 0; i < 6; ++i) s += uniform_unit(g);
  return s - 3.0;
}

Dataset two_gaussians(uint64_t seed, size_t per_class) {
  std::mt19937_64 g(seed);
  std::vector<std::vector<double>> rows;
  std::vector<int32_t> labels;
  for (size_t i = 0; i < 2 * per_class; ++i) {
    const int32_t label = i % 2 == 0 ? 1 : 0;
    const double mean = label == 1 ? 2.0 : -2.0;
    rows.push_back({mean + gauss(g), gauss(g)});
    labels.push_back(label);
  }
  return make_dataset(std::move(rows), std::move(labels));
}

}  // namespace

TEST_CASE("rank-sum auc equals pair enumeration") {
  std::mt19937_64 g(13);
  for (int trial = 0; trial < 40; ++trial) {
    const size_t n_pos = 1 + uniform_below(g, 100);
    const size_t n_neg = 1 + uniform_below(g, 100);
    std::vector<double> scores;
    std::vector<int32_t> labels;
    std::vector<double> pos, neg;
    for (size_t i = 0; i < n_pos + n_neg; ++i) {
      // quantized scores so ties actually occur
      const double s = static_cast<double>(uniform_below(g, 12)) / 11.0;
      const bool positive = i < n_pos;
      scores.push_back(s);
      labels.push_back(positive ? 1 : 0);
      (positive ? pos : neg).push_back(s);
    }
    const double fast = auc_from_scores(scores, labels);
    const double brute = oracle::auc_pairs(pos, neg);
    CHECK(fast == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("auc worked examples") {
  CHECK(auc_from_scores({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}) == 1.0);
  CHECK(auc_from_scores({0.9, 0.4, 0.5, 0.1}, {1, 1, 0, 0}) ==
        doctest::Approx(0.75));
  // one concordant pair, one tied
  CHECK(auc_from_scores({0.7, 0.7, 0.3}, {1, 0, 0}) == doctest::Approx(0.75));
  CHECK_THROWS_AS(auc_from_scores({0.5, 0.6}, {1, 1}), std::invalid_argument);
}

TEST_CASE("auc is invariant under strictly monotone score transforms") {
  std::mt19937_64 g(29);
  std::vector<double> scores;
  std::vector<int32_t> labels;
  for (int i = 0; i < 120; ++i) {
    scores.push_back(static_cast<double>(uniform_below(g, 40)) / 39.0);
    labels.push_back(uniform_below(g, 2) ? 1 : 0);
  }
  labels[0] = 1;
  labels[1] = 0;
  const double base = auc_from_scores(scores, labels);
  std::vector<double> cubed = scores;
  for (double& s : cubed) s = s * s * s;
  std::vector<double> affine = scores;
  for (double& s : affine) s = 3.0 * s + 11.0;
  CHECK(auc_from_scores(cubed, labels) == doctest::Approx(base).epsilon(1e-12));
  CHECK(auc_from_scores(affine, labels) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("a perfectly separating feature yields perfect training accuracy") {
  std::mt19937_64 g(7);
  std::vector<std::vector<double>> rows;
  std::vector<int32_t> labels;
  for (int i = 0; i < 50; ++i) {
    const int32_t label = i % 2;
    rows.push_back({label == 1 ? 1.0 + uniform_unit(g) : uniform_unit(g) - 1.0,
                    uniform_unit(g)});
    labels.push_back(label);
  }
  const Dataset train = make_dataset(std::move(rows), std::move(labels));
  const ForestModel model = train_forest(train, {.trees = 30, .seed = 4});
  REQUIRE(model.trees.size() == 30);
  for (size_t i = 0; i < train.size(); ++i) {
    const double score = forest_score(model, train.rows[i]);
    CHECK((score > 0.5) == (train.labels[i] == 1));
  }
}

TEST_CASE("leaf fractions stay within [0,1] and trees match the config") {
  const Dataset train = two_gaussians(3, 40);
  const ForestModel model = train_forest(train, {.trees = 17, .seed = 1});
  CHECK(model.trees.size() == 17);
  for (const auto& tree : model.trees) {
    for (const auto& node : tree) {
      if (node.feature < 0) {
        CHECK(node.threshold_or_frac >= 0.0);
        CHECK(node.threshold_or_frac <= 1.0);
      } else {
        CHECK(node.left >= 0);
        CHECK(node.right >= 0);
      }
    }
  }
}

TEST_CASE("training is deterministic for a fixed seed") {
  const Dataset train = two_gaussians(11, 60);
  const ForestModel a = train_forest(train, {.trees = 12, .seed = 99});
  const ForestModel b = train_forest(train, {.trees = 12, .seed = 99});
  REQUIRE(a.trees.size() == b.trees.size());
  for (size_t t = 0; t < a.trees.size(); ++t) {
    REQUIRE(a.trees[t].size() == b.trees[t].size());
    for (size_t i = 0; i < a.trees[t].size(); ++i) {
      CHECK(a.trees[t][i].feature == b.trees[t][i].feature);
      CHECK(a.trees[t][i].threshold_or_frac == b.trees[t][i].threshold_or_frac);
      CHECK(a.trees[t][i].left == b.trees[t][i].left);
      CHECK(a.trees[t][i].right == b.trees[t][i].right);
    }
  }
  const ForestModel c = train_forest(train, {.trees = 12, .seed = 98});
  bool any_diff = false;
  for (size_t t = 0; t < a.trees.size() && !any_diff; ++t) {
    if (a.trees[t].size() != c.trees[t].size()) {
      any_diff = true;
      break;
    }
    for (size_t i = 0; i < a.trees[t].size(); ++i) {
      if (a.trees[t][i].feature != c.trees[t][i].feature ||
          a.trees[t][i].threshold_or_frac != c.trees[t][i].threshold_or_frac) {
        any_diff = true;
        break;
      }
    }
  }
  // a different seed should (in practice) change at least one tree
  CHECK(any_diff);
}

TEST_CASE("well separated gaussians give high held-out auc") {
  const Dataset train = two_gaussians(21, 150);
  const Dataset test = two_gaussians(22, 100);
  const ForestModel model = train_forest(train, {.trees = 60, .seed = 5});
  CHECK(evaluate_auc(model, test) >= 0.95);
}

TEST_CASE("constant features carry no signal") {
  std::vector<std::vector<double>> rows(40, std::vector<double>{1.0, 2.0});
  std::vector<int32_t> labels;
  for (int i = 0; i < 40; ++i) labels.push_back(i % 2);
  const Dataset d = make_dataset(std::move(rows), std::move(labels));
  const ForestModel model = train_forest(d, {.trees = 20, .seed = 2});
  CHECK(evaluate_auc(model, d) == doctest::Approx(0.5));
}

TEST_CASE("single-class training sets are rejected") {
  const Dataset d =
      make_dataset({{1.0, 0.0}, {2.0, 1.0}, {3.0, 0.5}}, {1, 1, 1});
  CHECK_THROWS_AS(train_forest(d, {.trees = 5, .seed = 1}),
                  std::invalid_argument);
}

TEST_CASE("the seven block combinations project fixed column sets") {
  const auto all = all_combinations();
  REQUIRE(all.size() == 7);
  CHECK(all == std::vector<std::string>{"dynamic", "emotion", "topic",
                                        "dynamic+emotion", "dynamic+topic",
                                        "emotion+topic", "all"});
  CHECK(combination_columns("dynamic") ==
        std::vector<size_t>{0, 1, 2, 3, 4});
  CHECK(combination_columns("emotion").size() == 10);
  CHECK(combination_columns("emotion").front() == 5);
  CHECK(combination_columns("emotion").back() == 14);
  CHECK(combination_columns("topic").size() == 20);
  CHECK(combination_columns("topic").front() == 15);
  CHECK(combination_columns("topic").back() == 34);
  CHECK(combination_columns("all").size() == 35);
  const auto dt = combination_columns("dynamic+topic");
  CHECK(dt.size() == 25);
  CHECK(dt[4] == 4);
  CHECK(dt[5] == 15);
  CHECK_THROWS_AS(combination_columns("sentiment"), std::invalid_argument);
}

namespace {

// 35-wide table where only the topic block correlates with the label.
Dataset topic_signal_dataset(uint64_t seed, size_t n) {
  std::mt19937_64 g(seed);
  std::vector<std::vector<double>> rows;
  std::vector<int32_t> labels;
  for (size_t i = 0; i < n; ++i) {
    const int32_t label = i % 2 == 0 ? 1 : 0;
    std::vector<double> row(35);
    for (size_t c = 0; c < 15; ++c) row[c] = uniform_unit(g);
    for (size_t c = 15; c < 35; ++c) {
      row[c] = 0.8 * uniform_unit(g) + (label == 1 ? 0.2 : 0.0);
    }
    rows.push_back(std::move(row));
    labels.push_back(label);
  }
  return make_dataset(std::move(rows), std::move(labels));
}

}  // namespace

TEST_CASE("trials share splits and favor the block carrying the signal") {
  const Dataset d = topic_signal_dataset(17, 240);
  const auto reports = run_trials(d, {"dynamic+emotion", "topic", "all"}, 3,
                                  0.8, {.trees = 40, .seed = 7});
  REQUIRE(reports.size() == 3);
  for (const auto& r : reports) {
    REQUIRE(r.aucs.size() == 3);
    for (double a : r.aucs) {
      CHECK(a >= 0.0);
      CHECK(a <= 1.0);
    }
  }
  CHECK(reports[1].mean_auc > reports[0].mean_auc);
  CHECK(reports[2].mean_auc > reports[0].mean_auc);

  // same seed, same request: identical numbers out
  const auto again = run_trials(d, {"dynamic+emotion", "topic", "all"}, 3,
                                0.8, {.trees = 40, .seed = 7});
  for (size_t c = 0; c < reports.size(); ++c) {
    CHECK(reports[c].aucs == again[c].aucs);
  }
}

TEST_CASE("ten trials produce ten auc values per combination") {
  const Dataset d = topic_signal_dataset(23, 60);
  const auto reports =
      run_trials(d, all_combinations(), 10, 0.8, {.trees = 8, .seed = 3});
  REQUIRE(reports.size() == 7);
  for (const auto& r : reports) {
    CHECK(r.aucs.size() == 10);
    double mean = 0.0;
    for (double a : r.aucs) mean += a;
    mean /= 10.0;
    CHECK(r.mean_auc == doctest::Approx(mean).epsilon(1e-12));
    CHECK(r.stderr_auc >= 0.0);
  }
}
