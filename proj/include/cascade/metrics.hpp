#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cascade/tree.hpp"

namespace cascade {

struct CascadeMetrics {
  std::string root_id;
  uint32_t size = 0;
  uint32_t unique_users = 0;
  uint32_t depth = 0;
  double virality = 0.0;
  double lifetime_minutes = 0.0;
  double burstiness = 0.0;  // meaningful only when burstiness_defined
  bool burstiness_defined = false;
  std::string created_month;
};

// Mean pairwise distance over all unordered node pairs, via the edge-subtree
// identity sum(s*(n-s))/C(n,2). 0 for a single node.
double wiener_index(const CascadeTree& tree);

// Same identity over the first prefix_len nodes (a valid tree by node order).
double wiener_index_prefix(const CascadeTree& tree, size_t prefix_len);

// B = (sigma - m)/(sigma + m) over consecutive gaps of the sorted event
// timestamps (post included), population sigma. Returns false (undefined)
// with fewer than 3 events or when sigma + m == 0.
bool burstiness(const CascadeTree& tree, double& out);

CascadeMetrics compute_metrics(const CascadeTree& tree);

struct GrowthCurves {
  // Index d: distinct identifiable authors at depth exactly d, and minutes
  // from the root to the first arrival at depth d.
  std::vector<uint32_t> users_at_depth;
  std::vector<double> time_to_depth;
  // Index s-1 holds the value once the cascade reaches s nodes.
  std::vector<double> time_to_size;
  std::vector<double> virality_at_size;
};

// Arrival times use the running maximum of (created_utc - root time), so the
// curves stay monotone even across clock skew. Depth indices are capped at
// max_index, sizes at max_index entries.
GrowthCurves growth_curves(const CascadeTree& tree, size_t max_index = 100);

std::map<std::string, uint64_t> monthly_counts(
    const std::vector<CascadeMetrics>& metrics);

// CSV: root_id,size,unique_users,depth,virality,lifetime_minutes,burstiness,
// created_month with burstiness blank when undefined.
std::string metrics_csv(const std::vector<CascadeMetrics>& metrics);
std::string metrics_jsonl(const std::vector<CascadeMetrics>& metrics);

}  // namespace cascade
