#include "cascade/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "cascade/kernels.hpp"
#include "cascade/parallel.hpp"
#include "cascade/rng.hpp"

namespace cascade {

namespace {

struct SplitChoice {
  bool found = false;
  int32_t feature = -1;
  double threshold = 0.0;
  double score = 0.0;  // lower is better
};

// Weighted Gini objective: pos_l*neg_l/n_l + pos_r*neg_r/n_r.
SplitChoice best_split(const Dataset& data, const std::vector<int32_t>& idx,
                       size_t begin, size_t end,
                       const std::vector<int32_t>& candidates,
                       std::vector<std::pair<double, int32_t>>& scratch) {
  SplitChoice best;
  const size_t cnt = end - begin;
  for (int32_t f : candidates) {
    scratch.clear();
    for (size_t i = begin; i < end; ++i) {
      const auto& row = data.rows[static_cast<size_t>(idx[i])];
      scratch.emplace_back(row[static_cast<size_t>(f)],
                           data.labels[static_cast<size_t>(idx[i])]);
    }
    std::sort(scratch.begin(), scratch.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    size_t total_pos = 0;
    for (const auto& [v, y] : scratch) total_pos += static_cast<size_t>(y);

    size_t pos_l = 0;
    for (size_t i = 1; i < cnt; ++i) {
      pos_l += static_cast<size_t>(scratch[i - 1].second);
      if (scratch[i].first == scratch[i - 1].first) continue;
      const double n_l = static_cast<double>(i);
      const double n_r = static_cast<double>(cnt - i);
      const double p_l = static_cast<double>(pos_l);
      const double p_r = static_cast<double>(total_pos - pos_l);
      const double g = p_l * (n_l - p_l) / n_l + p_r * (n_r - p_r) / n_r;
      if (!best.found || g < best.score) {
        double thr = (scratch[i - 1].first + scratch[i].first) / 2.0;
        // Adjacent doubles can round the midpoint up to the right value,
        // which would push the whole right group left; pin to the left value.
        if (thr >= scratch[i].first) thr = scratch[i - 1].first;
        best = {true, f, thr, g};
      }
    }
  }
  return best;
}

std::vector<ForestModel::Node> train_tree(const Dataset& data, int mtry,
                                          std::mt19937_64& g) {
  const size_t n = data.size();
  std::vector<int32_t> idx(n);
  for (size_t i = 0; i < n; ++i) {
    idx[i] = static_cast<int32_t>(uniform_below(g, n));
  }

  std::vector<ForestModel::Node> nodes;
  struct Pending {
    size_t begin, end;
    size_t node;
  };
  std::vector<Pending> stack;
  nodes.emplace_back();
  stack.push_back({0, n, 0});

  std::vector<int32_t> pool(data.features());
  std::vector<std::pair<double, int32_t>> scratch;
  std::vector<int32_t> left_buf, right_buf;

  while (!stack.empty()) {
    const auto [begin, end, node_id] = stack.back();
    stack.pop_back();
    const size_t cnt = end - begin;
    size_t pos = 0;
    for (size_t i = begin; i < end; ++i) {
      pos += static_cast<size_t>(data.labels[static_cast<size_t>(idx[i])]);
    }
    auto make_leaf = [&] {
      nodes[node_id].feature = -1;
      nodes[node_id].threshold_or_frac =
          static_cast<double>(pos) / static_cast<double>(cnt);
    };
    if (cnt < 2 || pos == 0 || pos == cnt) {
      make_leaf();
      continue;
    }

    // floor(sqrt(F)) candidate features without replacement.
    std::iota(pool.begin(), pool.end(), 0);
    const size_t m = std::min<size_t>(static_cast<size_t>(mtry), pool.size());
    for (size_t j = 0; j < m; ++j) {
      const size_t pick = j + static_cast<size_t>(uniform_below(g, pool.size() - j));
      std::swap(pool[j], pool[pick]);
    }
    const std::vector<int32_t> candidates(pool.begin(),
                                          pool.begin() + static_cast<long>(m));
    const SplitChoice split = best_split(data, idx, begin, end, candidates, scratch);
    if (!split.found) {
      make_leaf();
      continue;
    }

    left_buf.clear();
    right_buf.clear();
    for (size_t i = begin; i < end; ++i) {
      const auto& row = data.rows[static_cast<size_t>(idx[i])];
      if (row[static_cast<size_t>(split.feature)] <= split.threshold) {
        left_buf.push_back(idx[i]);
      } else {
        right_buf.push_back(idx[i]);
      }
    }
    std::copy(left_buf.begin(), left_buf.end(), idx.begin() + static_cast<long>(begin));
    std::copy(right_buf.begin(), right_buf.end(),
              idx.begin() + static_cast<long>(begin + left_buf.size()));

    const size_t left_id = nodes.size();
    nodes.emplace_back();
    const size_t right_id = nodes.size();
    nodes.emplace_back();
    nodes[node_id].feature = split.feature;
    nodes[node_id].threshold_or_frac = split.threshold;
    nodes[node_id].left = static_cast<int32_t>(left_id);
    nodes[node_id].right = static_cast<int32_t>(right_id);
    stack.push_back({begin + left_buf.size(), end, right_id});
    stack.push_back({begin, begin + left_buf.size(), left_id});
  }
  return nodes;
}

}  // namespace

ForestModel train_forest(const Dataset& train, const ForestConfig& config) {
  if (train.size() == 0) throw std::invalid_argument("train_forest: empty dataset");
  const auto pos = static_cast<size_t>(
      std::count(train.labels.begin(), train.labels.end(), 1));
  if (pos == 0 || pos == train.labels.size()) {
    throw std::invalid_argument("train_forest: training set has one class");
  }
  ForestModel model;
  model.seed = config.seed;
  model.mtry = std::max(1, static_cast<int>(std::sqrt(
                               static_cast<double>(train.features()))));
  model.trees.resize(static_cast<size_t>(config.trees));
  parallel_for(static_cast<size_t>(config.trees), config.threads, [&](size_t t) {
    std::mt19937_64 g(derive_seed(config.seed, t));
    model.trees[t] = train_tree(train, model.mtry, g);
  });
  return model;
}

double forest_score(const ForestModel& model, const std::vector<double>& row) {
  double votes = 0.0;
  for (const auto& tree : model.trees) {
    size_t at = 0;
    while (tree[at].feature >= 0) {
      at = static_cast<size_t>(row[static_cast<size_t>(tree[at].feature)] <=
                                       tree[at].threshold_or_frac
                                   ? tree[at].left
                                   : tree[at].right);
    }
    const double frac = tree[at].threshold_or_frac;
    if (frac > 0.5) {
      votes += 1.0;
    } else if (frac == 0.5) {
      votes += 0.5;
    }
  }
  return votes / static_cast<double>(model.trees.size());
}

double auc_from_scores(const std::vector<double>& scores,
                       const std::vector<int32_t>& labels) {
  const size_t n = scores.size();
  size_t pos = 0;
  for (int32_t y : labels) pos += static_cast<size_t>(y);
  const size_t neg = n - pos;
  if (pos == 0 || neg == 0) {
    throw std::invalid_argument("auc: need both classes");
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return scores[a] < scores[b];
  });
  double rank_sum_pos = 0.0;
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    // 1-based ranks i+1..j averaged over the tie group.
    const double avg_rank = static_cast<double>(i + 1 + j) / 2.0;
    for (size_t t = i; t < j; ++t) {
      if (labels[order[t]] == 1) rank_sum_pos += avg_rank;
    }
    i = j;
  }
  const double p = static_cast<double>(pos);
  return (rank_sum_pos - p * (p + 1.0) / 2.0) / (p * static_cast<double>(neg));
}

double evaluate_auc(const ForestModel& model, const Dataset& test) {
  if (test.size() == 0) throw std::invalid_argument("evaluate_auc: empty test set");
  std::vector<double> scores(test.size());
  for (size_t i = 0; i < test.size(); ++i) {
    scores[i] = forest_score(model, test.rows[i]);
  }
  return auc_from_scores(scores, test.labels);
}

std::vector<std::string> all_combinations() {
  return {"dynamic",       "emotion",       "topic",        "dynamic+emotion",
          "dynamic+topic", "emotion+topic", "all"};
}

std::vector<size_t> combination_columns(const std::string& combination) {
  std::vector<size_t> cols;
  auto add_block = [&](size_t block) {
    size_t offset = 0;
    for (size_t b = 0; b < block; ++b) offset += kBlockWidths[b];
    for (size_t i = 0; i < kBlockWidths[block]; ++i) cols.push_back(offset + i);
  };
  if (combination == "all") {
    for (size_t b = 0; b < 3; ++b) add_block(b);
    return cols;
  }
  size_t start = 0;
  bool any = false;
  while (start <= combination.size()) {
    const size_t plus = combination.find('+', start);
    const std::string part = combination.substr(
        start, plus == std::string::npos ? std::string::npos : plus - start);
    bool matched = false;
    for (size_t b = 0; b < 3; ++b) {
      if (part == kBlockNames[b]) {
        add_block(b);
        matched = true;
        any = true;
        break;
      }
    }
    if (!matched) {
      throw std::invalid_argument("unknown feature combination '" + combination + "'");
    }
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  if (!any) throw std::invalid_argument("empty feature combination");
  std::sort(cols.begin(), cols.end());
  return cols;
}

std::vector<TrialReport> run_trials(const Dataset& full,
                                    const std::vector<std::string>& combinations,
                                    int trials, double split_fraction,
                                    const ForestConfig& config) {
  if (combinations.empty()) throw std::invalid_argument("no combinations given");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(split_fraction > 0.0 && split_fraction < 1.0)) {
    throw std::invalid_argument("split fraction must be in (0,1)");
  }
  const size_t n = full.size();
  std::vector<std::vector<size_t>> combo_cols;
  combo_cols.reserve(combinations.size());
  for (const auto& c : combinations) combo_cols.push_back(combination_columns(c));

  std::vector<TrialReport> reports(combinations.size());
  for (size_t c = 0; c < combinations.size(); ++c) {
    reports[c].combination = combinations[c];
  }

  std::vector<size_t> order(n);
  for (int trial = 0; trial < trials; ++trial) {
    std::iota(order.begin(), order.end(), size_t{0});
    std::mt19937_64 g(derive_seed(config.seed, 0x5717ULL + static_cast<uint64_t>(trial)));
    shuffle_deterministic(order, g);
    size_t n_train = static_cast<size_t>(split_fraction * static_cast<double>(n));
    n_train = std::clamp<size_t>(n_train, 1, n - 1);

    for (size_t c = 0; c < combinations.size(); ++c) {
      const auto& cols = combo_cols[c];
      Dataset train, test;
      for (size_t col : cols) {
        train.feature_names.push_back(full.feature_names[col]);
      }
      test.feature_names = train.feature_names;
      auto project = [&](size_t row_idx, Dataset& out) {
        std::vector<double> row;
        row.reserve(cols.size());
        for (size_t col : cols) row.push_back(full.rows[row_idx][col]);
        out.rows.push_back(std::move(row));
        out.labels.push_back(full.labels[row_idx]);
      };
      for (size_t i = 0; i < n_train; ++i) project(order[i], train);
      for (size_t i = n_train; i < n; ++i) project(order[i], test);

      ForestConfig fc = config;
      fc.seed = derive_seed(derive_seed(config.seed, 0xc0 + static_cast<uint64_t>(trial)), c);
      const ForestModel model = train_forest(train, fc);
      reports[c].aucs.push_back(evaluate_auc(model, test));
    }
  }

  for (auto& r : reports) {
    r.mean_auc = kernels::mean(r.aucs);
    const double sd = kernels::stddev_sample(r.aucs);
    r.stderr_auc = sd / std::sqrt(static_cast<double>(r.aucs.size()));
  }
  return reports;
}

}  // namespace cascade
