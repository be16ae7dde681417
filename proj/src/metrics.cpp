#include "cascade/metrics.hpp"

#include <algorithm>
#include <unordered_set>

#include "cascade/common.hpp"
#include "cascade/csv.hpp"
#include "cascade/kernels.hpp"
#include "json.hpp"

namespace cascade {

double wiener_index_prefix(const CascadeTree& tree, size_t prefix_len) {
  const size_t n = std::min(prefix_len, tree.nodes.size());
  if (n < 2) return 0.0;
  // Children come after parents, so one backward sweep accumulates subtree
  // sizes; each edge (i, parent) separates sub[i] vs n - sub[i] nodes.
  std::vector<uint64_t> sub(n, 1);
  uint64_t crossing = 0;
  for (size_t i = n - 1; i >= 1; --i) {
    crossing += sub[i] * (static_cast<uint64_t>(n) - sub[i]);
    sub[static_cast<size_t>(tree.nodes[i].parent)] += sub[i];
  }
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return static_cast<double>(crossing) / pairs;
}

double wiener_index(const CascadeTree& tree) {
  return wiener_index_prefix(tree, tree.nodes.size());
}

bool burstiness(const CascadeTree& tree, double& out) {
  const size_t n = tree.nodes.size();
  if (n < 3) return false;
  std::vector<int64_t> times;
  times.reserve(n);
  for (const auto& node : tree.nodes) times.push_back(node.created_utc);
  std::sort(times.begin(), times.end());
  std::vector<double> gaps(n - 1);
  for (size_t i = 1; i < n; ++i) {
    gaps[i - 1] = static_cast<double>(times[i] - times[i - 1]);
  }
  const double m = kernels::mean(gaps);
  const double sigma = kernels::stddev_population(gaps);
  if (sigma + m == 0.0) return false;
  out = (sigma - m) / (sigma + m);
  return true;
}

CascadeMetrics compute_metrics(const CascadeTree& tree) {
  CascadeMetrics m;
  m.root_id = tree.nodes[0].id;
  m.size = static_cast<uint32_t>(tree.nodes.size());
  m.created_month = month_bucket_utc(tree.nodes[0].created_utc);

  std::unordered_set<std::string> users;
  for (const auto& node : tree.nodes) {
    if (!node.author.empty()) users.insert(node.author);
  }
  m.unique_users = static_cast<uint32_t>(users.size());

  const auto depths = node_depths(tree);
  m.depth = depths.empty() ? 0 : *std::max_element(depths.begin(), depths.end());
  m.virality = wiener_index(tree);

  if (tree.nodes.size() > 1) {
    int64_t last = tree.nodes[1].created_utc;
    for (size_t i = 2; i < tree.nodes.size(); ++i) {
      last = std::max(last, tree.nodes[i].created_utc);
    }
    const int64_t span = last - tree.nodes[0].created_utc;
    m.lifetime_minutes = span > 0 ? static_cast<double>(span) / 60.0 : 0.0;
  }

  m.burstiness_defined = burstiness(tree, m.burstiness);
  return m;
}

GrowthCurves growth_curves(const CascadeTree& tree, size_t max_index) {
  GrowthCurves g;
  const size_t n = tree.nodes.size();
  const auto depths = node_depths(tree);
  const int64_t root_time = tree.nodes[0].created_utc;

  const uint32_t max_depth =
      std::min<uint32_t>(*std::max_element(depths.begin(), depths.end()),
                         static_cast<uint32_t>(max_index));
  g.time_to_depth.assign(max_depth + 1, 0.0);
  std::vector<bool> depth_seen(max_depth + 1, false);
  std::vector<std::unordered_set<std::string>> depth_users(max_depth + 1);

  const size_t max_size = std::min(n, max_index);
  g.time_to_size.reserve(max_size);
  g.virality_at_size.reserve(max_size);

  double running_minutes = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const int64_t delta = tree.nodes[i].created_utc - root_time;
    const double minutes = delta > 0 ? static_cast<double>(delta) / 60.0 : 0.0;
    running_minutes = std::max(running_minutes, minutes);

    if (depths[i] <= max_depth) {
      if (!depth_seen[depths[i]]) {
        depth_seen[depths[i]] = true;
        g.time_to_depth[depths[i]] = running_minutes;
      }
      if (!tree.nodes[i].author.empty()) {
        depth_users[depths[i]].insert(tree.nodes[i].author);
      }
    }
    if (i < max_size) {
      g.time_to_size.push_back(running_minutes);
      g.virality_at_size.push_back(wiener_index_prefix(tree, i + 1));
    }
  }

  g.users_at_depth.resize(max_depth + 1);
  for (size_t d = 0; d <= max_depth; ++d) {
    g.users_at_depth[d] = static_cast<uint32_t>(depth_users[d].size());
  }
  return g;
}

std::map<std::string, uint64_t> monthly_counts(
    const std::vector<CascadeMetrics>& metrics) {
  std::map<std::string, uint64_t> counts;
  for (const auto& m : metrics) ++counts[m.created_month];
  return counts;
}

std::string metrics_csv(const std::vector<CascadeMetrics>& metrics) {
  std::string out;
  write_csv_row(out, {"root_id", "size", "unique_users", "depth", "virality",
                      "lifetime_minutes", "burstiness", "created_month"});
  for (const auto& m : metrics) {
    write_csv_row(out,
                  {m.root_id, std::to_string(m.size),
                   std::to_string(m.unique_users), std::to_string(m.depth),
                   format_double(m.virality), format_double(m.lifetime_minutes),
                   m.burstiness_defined ? format_double(m.burstiness) : "",
                   m.created_month});
  }
  return out;
}

std::string metrics_jsonl(const std::vector<CascadeMetrics>& metrics) {
  std::string out;
  for (const auto& m : metrics) {
    nlohmann::json j;
    j["root_id"] = m.root_id;
    j["size"] = m.size;
    j["unique_users"] = m.unique_users;
    j["depth"] = m.depth;
    j["virality"] = m.virality;
    j["lifetime_minutes"] = m.lifetime_minutes;
    if (m.burstiness_defined) j["burstiness"] = m.burstiness;
    j["created_month"] = m.created_month;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace cascade
