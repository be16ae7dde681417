// Deterministic random fixtures for tests.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "cascade/rng.hpp"
#include "cascade/tree.hpp"

namespace gen {

// Build a tree directly from a parent array (parents[0] ignored).
inline cascade::CascadeTree tree_from_parents(
    const std::vector<int32_t>& parents, const std::vector<int64_t>& times,
    const std::vector<std::string>& authors = {}) {
  cascade::CascadeTree t;
  const size_t n = parents.size();
  t.children.resize(n);
  for (size_t i = 0; i < n; ++i) {
    cascade::CascadeNode node;
    node.id = "n" + std::to_string(i);
    node.parent = i == 0 ? -1 : parents[i];
    node.author = i < authors.size() ? authors[i] : "u" + std::to_string(i);
    node.created_utc = times[i];
    t.nodes.push_back(std::move(node));
    if (i > 0) t.children[static_cast<size_t>(parents[i])].push_back(
        static_cast<int32_t>(i));
  }
  return t;
}

// Random recursive tree: each node picks a uniform parent among its
// predecessors; timestamps increase with occasional repeats.
inline cascade::CascadeTree random_tree(std::mt19937_64& g, size_t n) {
  std::vector<int32_t> parents(n, -1);
  std::vector<int64_t> times(n);
  int64_t t = 1000000;
  for (size_t i = 0; i < n; ++i) {
    if (i > 0) parents[i] = static_cast<int32_t>(cascade::uniform_below(g, i));
    times[i] = t;
    t += static_cast<int64_t>(cascade::uniform_below(g, 240));
  }
  return tree_from_parents(parents, times);
}

}  // namespace gen
