#include "cascade/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "cascade/common.hpp"

namespace cascade {

CommentNetwork build_comment_network(const std::vector<CascadeTree>& trees) {
  // Candidate links as string pairs first; usernames become dense ids after
  // a sort so everything downstream is order-independent.
  std::vector<std::pair<const std::string*, const std::string*>> raw;
  for (const auto& tree : trees) {
    for (size_t i = 1; i < tree.nodes.size(); ++i) {
      const std::string& commenter = tree.nodes[i].author;
      const std::string& target =
          tree.nodes[static_cast<size_t>(tree.nodes[i].parent)].author;
      if (commenter.empty() || target.empty() || commenter == target) continue;
      raw.emplace_back(&target, &commenter);
    }
  }

  CommentNetwork net;
  {
    std::vector<const std::string*> names;
    names.reserve(raw.size() * 2);
    for (const auto& [f, t] : raw) {
      names.push_back(f);
      names.push_back(t);
    }
    std::sort(names.begin(), names.end(),
              [](const std::string* a, const std::string* b) { return *a < *b; });
    names.erase(std::unique(names.begin(), names.end(),
                            [](const std::string* a, const std::string* b) {
                              return *a == *b;
                            }),
                names.end());
    net.nodes.reserve(names.size());
    for (const std::string* n : names) net.nodes.push_back(*n);
  }

  std::unordered_map<std::string_view, int32_t> index;
  index.reserve(net.nodes.size());
  for (size_t i = 0; i < net.nodes.size(); ++i) {
    index.emplace(net.nodes[i], static_cast<int32_t>(i));
  }

  std::unordered_map<uint64_t, uint64_t> weight;
  weight.reserve(raw.size());
  for (const auto& [f, t] : raw) {
    const uint64_t key = (static_cast<uint64_t>(index.at(*f)) << 32) |
                         static_cast<uint32_t>(index.at(*t));
    ++weight[key];
  }
  net.edges.reserve(weight.size());
  for (const auto& [key, w] : weight) {
    net.edges.push_back({static_cast<int32_t>(key >> 32),
                         static_cast<int32_t>(key & 0xffffffffu), w});
  }
  std::sort(net.edges.begin(), net.edges.end(),
            [](const CommentNetwork::Edge& a, const CommentNetwork::Edge& b) {
              if (a.from != b.from) return a.from < b.from;
              return a.to < b.to;
            });
  return net;
}

std::vector<uint32_t> degrees(const CommentNetwork& net) {
  std::vector<uint32_t> deg(net.nodes.size(), 0);
  for (const auto& e : net.edges) {
    ++deg[static_cast<size_t>(e.from)];
    ++deg[static_cast<size_t>(e.to)];
  }
  return deg;
}

Ccdf degree_distribution(const CommentNetwork& net) {
  if (net.nodes.empty())
    throw std::invalid_argument("degree_distribution: empty network");
  const auto deg = degrees(net);
  std::vector<double> vals(deg.begin(), deg.end());
  return ccdf(std::move(vals));
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) {
    throw std::invalid_argument("grid must be start:end:step, got '" + spec + "'");
  }
  const auto start = parse_double(parts[0]);
  const auto end = parse_double(parts[1]);
  const auto step = parse_double(parts[2]);
  if (!start || !end || !step || *step <= 0.0 || *start < 0.0 || *end < *start) {
    throw std::invalid_argument("bad grid '" + spec + "'");
  }
  std::vector<double> grid;
  for (size_t i = 0;; ++i) {
    const double v = *start + static_cast<double>(i) * *step;
    if (v > *end + *step * 1e-9) break;
    grid.push_back(std::min(v, *end));
  }
  return grid;
}

std::vector<int32_t> removal_order(const CommentNetwork& net, bool adaptive) {
  const size_t n = net.nodes.size();
  std::vector<int32_t> order(n);
  if (!adaptive) {
    const auto deg = degrees(net);
    for (size_t i = 0; i < n; ++i) order[i] = static_cast<int32_t>(i);
    std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
      if (deg[static_cast<size_t>(a)] != deg[static_cast<size_t>(b)])
        return deg[static_cast<size_t>(a)] > deg[static_cast<size_t>(b)];
      return a < b;  // node ids are sorted usernames
    });
    return order;
  }

  // Each directed edge adds one entry to both endpoints' lists, so a node's
  // list length is exactly its in+out degree and removal of a neighbor
  // subtracts per shared directed edge.
  std::vector<std::vector<int32_t>> touch(n);
  for (const auto& e : net.edges) {
    touch[static_cast<size_t>(e.from)].push_back(e.to);
    touch[static_cast<size_t>(e.to)].push_back(e.from);
  }
  std::vector<int64_t> deg(n);
  // (-degree, id) so begin() is the highest degree, lowest id.
  std::set<std::pair<int64_t, int32_t>> queue;
  for (size_t i = 0; i < n; ++i) {
    deg[i] = static_cast<int64_t>(touch[i].size());
    queue.emplace(-deg[i], static_cast<int32_t>(i));
  }
  std::vector<bool> removed(n, false);
  for (size_t step = 0; step < n; ++step) {
    const auto [negdeg, u] = *queue.begin();
    queue.erase(queue.begin());
    removed[static_cast<size_t>(u)] = true;
    order[step] = u;
    for (int32_t w : touch[static_cast<size_t>(u)]) {
      if (removed[static_cast<size_t>(w)]) continue;
      queue.erase({-deg[static_cast<size_t>(w)], w});
      --deg[static_cast<size_t>(w)];
      queue.emplace(-deg[static_cast<size_t>(w)], w);
    }
  }
  return order;
}

namespace {

struct Dsu {
  std::vector<int32_t> parent;
  std::vector<int32_t> size;
  explicit Dsu(size_t n) : parent(n, -1), size(n, 0) {}
  int32_t find(int32_t x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  // Returns the merged component size.
  int32_t unite(int32_t a, int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return size[static_cast<size_t>(a)];
    if (size[static_cast<size_t>(a)] < size[static_cast<size_t>(b)])
      std::swap(a, b);
    parent[static_cast<size_t>(b)] = a;
    size[static_cast<size_t>(a)] += size[static_cast<size_t>(b)];
    return size[static_cast<size_t>(a)];
  }
};

}  // namespace

PercolationTrace percolate(const CommentNetwork& net,
                           const std::vector<double>& grid, bool adaptive) {
  const size_t n = net.nodes.size();
  if (n == 0) throw std::invalid_argument("percolate: empty network");
  const auto order = removal_order(net, adaptive);

  std::vector<std::vector<int32_t>> adj(n);
  for (const auto& e : net.edges) {
    adj[static_cast<size_t>(e.from)].push_back(e.to);
    adj[static_cast<size_t>(e.to)].push_back(e.from);
  }

  // Replay removals backwards: activate nodes in reverse order, merging
  // components; g_at[r] is the largest weak component after the first r
  // removals.
  std::vector<double> g_at(n + 1, 0.0);
  Dsu dsu(n);
  std::vector<bool> active(n, false);
  int32_t maxcomp = 0;
  for (size_t r = n; r-- > 0;) {
    const int32_t u = order[r];
    active[static_cast<size_t>(u)] = true;
    dsu.parent[static_cast<size_t>(u)] = u;
    dsu.size[static_cast<size_t>(u)] = 1;
    maxcomp = std::max(maxcomp, 1);
    for (int32_t w : adj[static_cast<size_t>(u)]) {
      if (!active[static_cast<size_t>(w)]) continue;
      maxcomp = std::max(maxcomp, dsu.unite(u, w));
    }
    g_at[r] = static_cast<double>(maxcomp) / static_cast<double>(n);
  }

  PercolationTrace trace;
  trace.points.reserve(grid.size());
  for (double q : grid) {
    const double exact = q * static_cast<double>(n);
    int64_t r = static_cast<int64_t>(std::ceil(exact - 1e-9));
    r = std::clamp<int64_t>(r, 0, static_cast<int64_t>(n));
    trace.points.push_back({q, g_at[static_cast<size_t>(r)]});
  }
  return trace;
}

namespace {
constexpr char kNetMagic[4] = {'C', 'N', 'E', 'T'};
constexpr uint32_t kNetVersion = 1;
}  // namespace

void save_network(const std::string& path, const CommentNetwork& net) {
  std::string out;
  out.append(kNetMagic, sizeof(kNetMagic));
  append_pod(out, kNetVersion);
  append_pod(out, static_cast<uint64_t>(net.nodes.size()));
  for (const auto& name : net.nodes) {
    append_pod(out, static_cast<uint32_t>(name.size()));
    out.append(name);
  }
  append_pod(out, static_cast<uint64_t>(net.edges.size()));
  for (const auto& e : net.edges) {
    append_pod(out, e.from);
    append_pod(out, e.to);
    append_pod(out, e.weight);
  }
  write_file_atomic(path, out);
}

CommentNetwork load_network(const std::string& path) {
  const std::string buf = read_file(path);
  if (buf.size() < 4 || std::memcmp(buf.data(), kNetMagic, 4) != 0) {
    throw io_error(path + ": not a network file");
  }
  size_t off = 4;
  if (read_pod<uint32_t>(buf, off, path) != kNetVersion) {
    throw io_error(path + ": unsupported network version");
  }
  CommentNetwork net;
  const uint64_t n = read_pod<uint64_t>(buf, off, path);
  net.nodes.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    const uint32_t len = read_pod<uint32_t>(buf, off, path);
    if (off + len > buf.size()) throw io_error(path + ": truncated file");
    net.nodes.emplace_back(buf.data() + off, len);
    off += len;
  }
  const uint64_t e = read_pod<uint64_t>(buf, off, path);
  net.edges.reserve(e);
  for (uint64_t i = 0; i < e; ++i) {
    CommentNetwork::Edge edge;
    edge.from = read_pod<int32_t>(buf, off, path);
    edge.to = read_pod<int32_t>(buf, off, path);
    edge.weight = read_pod<uint64_t>(buf, off, path);
    if (edge.from < 0 || static_cast<uint64_t>(edge.from) >= n ||
        edge.to < 0 || static_cast<uint64_t>(edge.to) >= n) {
      throw io_error(path + ": edge endpoint out of range");
    }
    net.edges.push_back(edge);
  }
  if (off != buf.size()) throw io_error(path + ": trailing bytes");
  return net;
}

}  // namespace cascade
