#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cascade/stats.hpp"
#include "cascade/tree.hpp"

namespace cascade {

// Directed user graph: an edge runs from the commented-to user to the
// commenter. Nodes are sorted usernames; edges are distinct, self-loop-free,
// sorted by (from, to), with collapsed multiplicity kept as weight.
struct CommentNetwork {
  struct Edge {
    int32_t from = 0;
    int32_t to = 0;
    uint64_t weight = 0;
  };
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
};

// Nodes with deleted authors never enter the network; only users incident to
// at least one edge become nodes.
CommentNetwork build_comment_network(const std::vector<CascadeTree>& trees);

// in + out over distinct edges, per node.
std::vector<uint32_t> degrees(const CommentNetwork& net);

// CCDF over the degree sequence. Throws on an empty network.
Ccdf degree_distribution(const CommentNetwork& net);

struct PercolationTrace {
  struct Point {
    double q = 0.0;  // fraction of nodes removed
    double g = 0.0;  // largest weak component / original node count
  };
  std::vector<Point> points;
};

// "start:end:step" inclusive grid, e.g. "0:0.15:0.001".
std::vector<double> parse_grid(const std::string& spec);

// Targeted degree percolation. Removal order is descending initial degree
// with ties on ascending username (adaptive=false, computed exactly by
// replaying removals backwards through a union-find), or recomputed-degree
// greedy order (adaptive=true, slower).
PercolationTrace percolate(const CommentNetwork& net,
                           const std::vector<double>& grid, bool adaptive);

// Full removal order, exposed for the brute-force cross-check.
std::vector<int32_t> removal_order(const CommentNetwork& net, bool adaptive);

void save_network(const std::string& path, const CommentNetwork& net);
CommentNetwork load_network(const std::string& path);

}  // namespace cascade
