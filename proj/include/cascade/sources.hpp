#pragma once

#include <string>
#include <vector>

#include "cascade/events.hpp"
#include "cascade/metrics.hpp"

namespace cascade {

inline constexpr const char* kSubgroups[] = {
    "left",          "left_leaning",    "center",
    "right_leaning", "right",           "social:twitter",
    "social:facebook", "social:imgur",  "social:google",
    "social:youtube", "homegrown",
};

inline constexpr const char* kHomegrownSubgroup = "homegrown";
inline constexpr const char* kUnclassified = "unclassified";

// Lowercased host with any "www." prefix stripped; scheme/path/port
// discarded; empty result means the string was not a usable URL.
std::string extract_domain(std::string_view url);

struct DomainMap {
  // host or registered domain (lowercase) -> subgroup
  std::vector<std::pair<std::string, std::string>> entries;  // file order
  const std::string* lookup(const std::string& domain) const;
};

// CSV "domain,subgroup"; subgroups restricted to kSubgroups. Errors carry
// line numbers.
DomainMap load_domain_map(const std::string& path);

struct SourceAssignment {
  std::string root_id;
  std::string subgroup;        // one of kSubgroups or "unclassified"
  std::string matched_domain;  // empty for homegrown/unclassified
};

// homegrown when the post has no URL, a non-URL url field, or an
// own-platform link; otherwise longest-suffix domain match; unmatched
// domains are "unclassified" and excluded from subgroup reports.
SourceAssignment classify_source(const ThreadEvent& post, const DomainMap& map);

// One row per (subgroup, metric): cascade counts plus box statistics, with
// depth restricted to >= 1 and virality to >= 1; size unrestricted; a
// "general" row covers all assigned cascades.
std::string subgroup_report_csv(const std::vector<SourceAssignment>& assignments,
                                const std::vector<CascadeMetrics>& metrics);

}  // namespace cascade
