#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cascade/events.hpp"

namespace cascade {

struct CascadeNode {
  std::string id;
  int32_t parent = -1;  // index into nodes; -1 only at the root
  std::string author;   // empty when deleted
  int64_t created_utc = 0;
};

// nodes[0] is the post. Node order is arrival order: ascending
// (created_utc, id) subject to parents placed first, so every prefix of
// nodes is itself a valid tree. children lists follow the same order.
struct CascadeTree {
  std::vector<CascadeNode> nodes;
  std::vector<std::vector<int32_t>> children;
};

struct BuildStats {
  uint64_t orphans = 0;     // comments whose parent chain or post is missing
  uint64_t duplicates = 0;  // repeated ids, first occurrence kept
};

// Assemble one cascade from its post and candidate comments (those whose
// root_id pointed here). Comments that never attach count as orphans.
CascadeTree assemble_cascade(const ThreadEvent& post,
                             std::vector<const ThreadEvent*> comments,
                             BuildStats& stats);

// Group events by root_id and assemble every cascade, ordered by
// (root created_utc, root id). Comments referencing an unknown post count
// as orphans.
std::vector<CascadeTree> build_cascades(const std::vector<ThreadEvent>& events,
                                        BuildStats& stats);

// Depth of every node, root = 0.
std::vector<uint32_t> node_depths(const CascadeTree& tree);

}  // namespace cascade
