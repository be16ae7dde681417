#include "cascade/sources.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "cascade/common.hpp"
#include "cascade/csv.hpp"
#include "cascade/stats.hpp"

namespace cascade {

namespace {

// Links back into the hosting platform count as homegrown regardless of the
// user-supplied map.
constexpr const char* kInternalDomains[] = {"reddit.com", "redd.it"};

bool valid_subgroup(const std::string& s) {
  for (const char* g : kSubgroups) {
    if (s == g) return true;
  }
  return false;
}

bool host_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' ||
         c == '-';
}

// domain equals suffix or ends with ".suffix"
bool domain_suffix(const std::string& domain, std::string_view suffix) {
  if (domain.size() < suffix.size()) return false;
  if (domain.size() == suffix.size()) return domain == suffix;
  return domain.compare(domain.size() - suffix.size(), suffix.size(),
                        suffix) == 0 &&
         domain[domain.size() - suffix.size() - 1] == '.';
}

}  // namespace

std::string extract_domain(std::string_view url) {
  const size_t scheme = url.find("://");
  if (scheme == std::string_view::npos) return {};
  for (size_t i = 0; i < scheme; ++i) {
    const char c = url[i];
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))) return {};
  }
  std::string_view rest = url.substr(scheme + 3);
  const size_t cut = rest.find_first_of("/?#");
  if (cut != std::string_view::npos) rest = rest.substr(0, cut);
  const size_t at = rest.rfind('@');  // strip userinfo
  if (at != std::string_view::npos) rest = rest.substr(at + 1);
  const size_t port = rest.find(':');
  if (port != std::string_view::npos) rest = rest.substr(0, port);

  std::string host = lower_ascii(rest);
  if (host.rfind("www.", 0) == 0) host = host.substr(4);
  if (host.empty() || host.find('.') == std::string::npos) return {};
  for (char c : host) {
    if (!host_char(c)) return {};
  }
  if (host.front() == '.' || host.back() == '.') return {};
  return host;
}

const std::string* DomainMap::lookup(const std::string& domain) const {
  for (const auto& [d, g] : entries) {
    if (d == domain) return &g;
  }
  return nullptr;
}

DomainMap load_domain_map(const std::string& path) {
  const CsvTable table = CsvTable::read_file(path);
  const size_t dcol = table.column("domain");
  const size_t gcol = table.column("subgroup");
  DomainMap map;
  for (size_t r = 0; r < table.rows(); ++r) {
    std::string domain = lower_ascii(table.cell(r, dcol));
    const std::string& subgroup = table.cell(r, gcol);
    if (domain.empty()) {
      throw io_error(path + ":" + std::to_string(r + 2) + ": empty domain");
    }
    if (!valid_subgroup(subgroup)) {
      throw io_error(path + ":" + std::to_string(r + 2) +
                     ": unknown subgroup '" + subgroup + "'");
    }
    map.entries.emplace_back(std::move(domain), subgroup);
  }
  return map;
}

SourceAssignment classify_source(const ThreadEvent& post, const DomainMap& map) {
  SourceAssignment out;
  out.root_id = post.id;
  if (post.url.empty()) {
    out.subgroup = kHomegrownSubgroup;
    return out;
  }
  const std::string domain = extract_domain(post.url);
  if (domain.empty()) {
    // A url field that is not an outbound link (e.g. "self.community").
    out.subgroup = kHomegrownSubgroup;
    return out;
  }
  for (const char* internal : kInternalDomains) {
    if (domain_suffix(domain, internal)) {
      out.subgroup = kHomegrownSubgroup;
      return out;
    }
  }
  // Longest-suffix match: the exact host first, then parent domains, so
  // "news.antiwar.com" can carry its own label next to "antiwar.com".
  std::string probe = domain;
  for (;;) {
    if (const std::string* g = map.lookup(probe)) {
      out.subgroup = *g;
      out.matched_domain = probe;
      return out;
    }
    const size_t dot = probe.find('.');
    if (dot == std::string::npos || probe.find('.', dot + 1) == std::string::npos) {
      break;  // registered domain already probed
    }
    probe = probe.substr(dot + 1);
  }
  out.subgroup = kUnclassified;
  return out;
}

std::string subgroup_report_csv(const std::vector<SourceAssignment>& assignments,
                                const std::vector<CascadeMetrics>& metrics) {
  std::unordered_map<std::string_view, const CascadeMetrics*> by_root;
  by_root.reserve(metrics.size());
  for (const auto& m : metrics) by_root.emplace(m.root_id, &m);

  struct Samples {
    std::vector<double> size, depth, virality;
    uint64_t count = 0;
  };
  std::map<std::string, Samples> groups;
  Samples general;

  auto accumulate = [](Samples& s, const CascadeMetrics& m) {
    ++s.count;
    s.size.push_back(static_cast<double>(m.size));
    if (m.depth >= 1) s.depth.push_back(static_cast<double>(m.depth));
    if (m.virality >= 1.0) s.virality.push_back(m.virality);
  };

  for (const auto& a : assignments) {
    auto it = by_root.find(a.root_id);
    if (it == by_root.end()) continue;
    accumulate(general, *it->second);
    if (a.subgroup == kUnclassified) continue;
    accumulate(groups[a.subgroup], *it->second);
  }

  std::string out;
  write_csv_row(out, {"subgroup", "metric", "count", "min", "q1", "median",
                      "q3", "max", "tukey_outliers"});
  auto emit = [&](const std::string& name, const Samples& s) {
    write_csv_row(out, {name, "cascades", std::to_string(s.count), "", "", "",
                        "", "", ""});
    const std::pair<const char*, const std::vector<double>*> metrics_rows[] = {
        {"size", &s.size}, {"depth", &s.depth}, {"virality", &s.virality}};
    for (const auto& [metric, sample] : metrics_rows) {
      if (sample->empty()) continue;
      const SummaryStats st = summary_stats(*sample, false);
      write_csv_row(out, {name, metric, std::to_string(st.count),
                          format_double(st.min), format_double(st.q1),
                          format_double(st.median), format_double(st.q3),
                          format_double(st.max),
                          std::to_string(st.tukey_outlier_count)});
    }
  };

  emit("general", general);
  for (const char* g : kSubgroups) {
    auto it = groups.find(g);
    if (it == groups.end()) {
      write_csv_row(out, {g, "cascades", "0", "", "", "", "", "", ""});
    } else {
      emit(g, it->second);
    }
  }
  return out;
}

}  // namespace cascade
