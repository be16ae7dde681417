#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cascade {

// Row-major dataset with binary labels (1 = positive class).
struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> rows;
  std::vector<int32_t> labels;

  size_t features() const { return feature_names.size(); }
  size_t size() const { return rows.size(); }
};

struct ForestConfig {
  int trees = 200;
  uint64_t seed = 0;
  int threads = 1;
};

struct ForestModel {
  // Flattened nodes per tree. feature < 0 marks a leaf carrying the positive
  // fraction in threshold_or_frac.
  struct Node {
    int32_t feature = -1;
    double threshold_or_frac = 0.0;
    int32_t left = -1;
    int32_t right = -1;
  };
  std::vector<std::vector<Node>> trees;
  uint64_t seed = 0;
  int mtry = 0;
};

// Bootstrap-resampled CART trees, Gini splits over floor(sqrt(F)) random
// candidate features (at least 1), grown until pure or fewer than 2 samples,
// midpoint thresholds. Deterministic given the seed, whatever the thread
// count. Throws std::invalid_argument on a single-class training set.
ForestModel train_forest(const Dataset& train, const ForestConfig& config);

// Fraction of trees voting positive; a leaf at exactly 0.5 counts half.
double forest_score(const ForestModel& model, const std::vector<double>& row);

// Rank-sum AUC with tie averaging. Throws std::invalid_argument unless both
// classes appear.
double auc_from_scores(const std::vector<double>& scores,
                       const std::vector<int32_t>& labels);

double evaluate_auc(const ForestModel& model, const Dataset& test);

struct TrialReport {
  std::string combination;
  std::vector<double> aucs;
  double mean_auc = 0.0;
  double stderr_auc = 0.0;
};

// The three feature blocks in concatenation order.
inline constexpr const char* kBlockNames[3] = {"dynamic", "emotion", "topic"};
inline constexpr size_t kBlockWidths[3] = {5, 10, 20};

// All seven nonempty block subsets in a fixed report order.
std::vector<std::string> all_combinations();

// Column subset of a 35-wide table for a combination label such as
// "dynamic+topic" ("all" covers every block).
std::vector<size_t> combination_columns(const std::string& combination);

// Shared-split protocol: per trial one 80/20 shuffle of the row set is reused
// across every requested combination, so combination scores are paired.
std::vector<TrialReport> run_trials(const Dataset& full,
                                    const std::vector<std::string>& combinations,
                                    int trials, double split_fraction,
                                    const ForestConfig& config);

}  // namespace cascade
