#include "cascade/tree.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

namespace cascade {

namespace {

struct HeapEntry {
  int64_t created_utc;
  const ThreadEvent* ev;
};

struct HeapLater {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.created_utc != b.created_utc) return a.created_utc > b.created_utc;
    return a.ev->id > b.ev->id;
  }
};

}  // namespace

CascadeTree assemble_cascade(const ThreadEvent& post,
                             std::vector<const ThreadEvent*> comments,
                             BuildStats& stats) {
  CascadeTree tree;
  tree.nodes.push_back({post.id, -1, post.author, post.created_utc});
  tree.children.emplace_back();

  std::unordered_map<std::string, int32_t> placed;
  placed.emplace(post.id, 0);

  // Comments whose parent is not placed yet, keyed by that parent id.
  std::unordered_map<std::string, std::vector<const ThreadEvent*>> waiting;
  for (const ThreadEvent* c : comments) {
    waiting[c->parent_id].push_back(c);
  }

  // Pop the earliest placeable comment each step; ties break on id. Nodes
  // therefore land in arrival order with every parent placed first.
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapLater> ready;
  auto release = [&](const std::string& parent_id) {
    auto it = waiting.find(parent_id);
    if (it == waiting.end()) return;
    for (const ThreadEvent* c : it->second) {
      ready.push({c->created_utc, c});
    }
    waiting.erase(it);
  };
  release(post.id);

  while (!ready.empty()) {
    const ThreadEvent* c = ready.top().ev;
    ready.pop();
    if (placed.count(c->id) != 0) {
      ++stats.duplicates;
      continue;
    }
    const int32_t parent = placed.at(c->parent_id);
    const int32_t idx = static_cast<int32_t>(tree.nodes.size());
    tree.nodes.push_back({c->id, parent, c->author, c->created_utc});
    tree.children.emplace_back();
    tree.children[static_cast<size_t>(parent)].push_back(idx);
    placed.emplace(c->id, idx);
    release(c->id);
  }

  for (const auto& [_, rest] : waiting) {
    stats.orphans += rest.size();
  }
  return tree;
}

std::vector<CascadeTree> build_cascades(const std::vector<ThreadEvent>& events,
                                        BuildStats& stats) {
  std::unordered_map<std::string, const ThreadEvent*> posts;
  std::vector<const ThreadEvent*> post_order;
  for (const auto& ev : events) {
    if (ev.kind != EventKind::post) continue;
    auto [it, inserted] = posts.emplace(ev.id, &ev);
    if (inserted) {
      post_order.push_back(&ev);
    } else {
      ++stats.duplicates;
    }
  }

  std::unordered_map<std::string, std::vector<const ThreadEvent*>> by_root;
  for (const auto& ev : events) {
    if (ev.kind != EventKind::comment) continue;
    if (posts.count(ev.root_id) == 0) {
      ++stats.orphans;
      continue;
    }
    by_root[ev.root_id].push_back(&ev);
  }

  std::sort(post_order.begin(), post_order.end(),
            [](const ThreadEvent* a, const ThreadEvent* b) {
              if (a->created_utc != b->created_utc)
                return a->created_utc < b->created_utc;
              return a->id < b->id;
            });

  std::vector<CascadeTree> trees;
  trees.reserve(post_order.size());
  for (const ThreadEvent* post : post_order) {
    auto it = by_root.find(post->id);
    std::vector<const ThreadEvent*> group;
    if (it != by_root.end()) group = std::move(it->second);
    trees.push_back(assemble_cascade(*post, std::move(group), stats));
  }
  return trees;
}

std::vector<uint32_t> node_depths(const CascadeTree& tree) {
  std::vector<uint32_t> depth(tree.nodes.size(), 0);
  for (size_t i = 1; i < tree.nodes.size(); ++i) {
    depth[i] = depth[static_cast<size_t>(tree.nodes[i].parent)] + 1;
  }
  return depth;
}

}  // namespace cascade
