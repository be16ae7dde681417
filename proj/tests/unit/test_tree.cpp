#include "cascade/tree.hpp"

#include "doctest.h"

using namespace cascade;

namespace {

ThreadEvent post(const std::string& id, int64_t t,
                 const std::string& author = "op") {
  ThreadEvent e;
  e.id = id;
  e.kind = EventKind::post;
  e.root_id = id;
  e.author = author;
  e.created_utc = t;
  return e;
}

ThreadEvent comment(const std::string& id, const std::string& parent,
                    const std::string& root, int64_t t,
                    const std::string& author = "u") {
  ThreadEvent e;
  e.id = id;
  e.kind = EventKind::comment;
  e.parent_id = parent;
  e.root_id = root;
  e.author = author;
  e.created_utc = t;
  return e;
}

}  // namespace

TEST_CASE("simple chain assembly") {
  std::vector<ThreadEvent> events{
      post("p", 100),
      comment("a", "p", "p", 200),
      comment("b", "a", "p", 300),
  };
  BuildStats stats;
  auto trees = build_cascades(events, stats);
  REQUIRE(trees.size() == 1);
  CHECK(trees[0].nodes.size() == 3);
  CHECK(stats.orphans == 0);
  CHECK(stats.duplicates == 0);
  auto depths = node_depths(trees[0]);
  CHECK(depths[2] == 2);
}

TEST_CASE("missing parent drops the comment as an orphan") {
  std::vector<ThreadEvent> events{
      post("p", 100),
      comment("x", "missing", "p", 200),
  };
  BuildStats stats;
  auto trees = build_cascades(events, stats);
  REQUIRE(trees.size() == 1);
  CHECK(trees[0].nodes.size() == 1);
  CHECK(stats.orphans == 1);
}

TEST_CASE("orphan chains: children of orphans are orphans too") {
  std::vector<ThreadEvent> events{
      post("p", 100),
      comment("a", "gone", "p", 200),
      comment("b", "a", "p", 300),
      comment("c", "b", "p", 400),
  };
  BuildStats stats;
  auto trees = build_cascades(events, stats);
  CHECK(trees[0].nodes.size() == 1);
  CHECK(stats.orphans == 3);
}

TEST_CASE("comment pointing at an unknown post is an orphan") {
  std::vector<ThreadEvent> events{
      post("p", 100),
      comment("a", "q", "q", 200),
  };
  BuildStats stats;
  auto trees = build_cascades(events, stats);
  REQUIRE(trees.size() == 1);
  CHECK(stats.orphans == 1);
}

TEST_CASE("six node fixture: two branches") {
  // r with children a, b; a has c, d; b has e.
  std::vector<ThreadEvent> events{
      post("r", 1000),
      comment("a", "r", "r", 1100),
      comment("b", "r", "r", 1200),
      comment("c", "a", "r", 1300),
      comment("d", "a", "r", 1400),
      comment("e", "b", "r", 1500),
  };
  BuildStats stats;
  auto trees = build_cascades(events, stats);
  REQUIRE(trees.size() == 1);
  const auto& t = trees[0];
  CHECK(t.nodes.size() == 6);
  auto depths = node_depths(t);
  CHECK(*std::max_element(depths.begin(), depths.end()) == 2);
  CHECK(t.children[0].size() == 2);
}

TEST_CASE("duplicate ids keep the first occurrence") {
  std::vector<ThreadEvent> events{
      post("p", 100),
      comment("a", "p", "p", 200, "first"),
      comment("a", "p", "p", 300, "second"),
  };
  BuildStats stats;
  auto trees = build_cascades(events, stats);
  CHECK(trees[0].nodes.size() == 2);
  CHECK(trees[0].nodes[1].author == "first");
  CHECK(stats.duplicates == 1);
}

TEST_CASE("input order does not matter, node order is arrival order") {
  std::vector<ThreadEvent> events{
      comment("late", "p", "p", 900),
      comment("mid", "p", "p", 500),
      post("p", 100),
      comment("deep", "mid", "p", 600),
  };
  BuildStats stats;
  auto trees = build_cascades(events, stats);
  REQUIRE(trees.size() == 1);
  const auto& t = trees[0];
  REQUIRE(t.nodes.size() == 4);
  CHECK(t.nodes[0].id == "p");
  CHECK(t.nodes[1].id == "mid");
  CHECK(t.nodes[2].id == "deep");
  CHECK(t.nodes[3].id == "late");
  // Every prefix is a valid tree: parents always precede children.
  for (size_t i = 1; i < t.nodes.size(); ++i) {
    CHECK(t.nodes[i].parent >= 0);
    CHECK(static_cast<size_t>(t.nodes[i].parent) < i);
  }
}

TEST_CASE("timestamp inversion is repaired topologically") {
  // Child carries an earlier clock than its parent; it still must be placed
  // after the parent.
  std::vector<ThreadEvent> events{
      post("p", 1000),
      comment("a", "p", "p", 2000),
      comment("b", "a", "p", 1500),
  };
  BuildStats stats;
  auto trees = build_cascades(events, stats);
  const auto& t = trees[0];
  REQUIRE(t.nodes.size() == 3);
  CHECK(t.nodes[1].id == "a");
  CHECK(t.nodes[2].id == "b");
}

TEST_CASE("sibling order is by timestamp then id") {
  std::vector<ThreadEvent> events{
      post("p", 100),
      comment("z", "p", "p", 200),
      comment("a", "p", "p", 200),
      comment("m", "p", "p", 150),
  };
  BuildStats stats;
  auto trees = build_cascades(events, stats);
  const auto& t = trees[0];
  REQUIRE(t.children[0].size() == 3);
  CHECK(t.nodes[static_cast<size_t>(t.children[0][0])].id == "m");
  CHECK(t.nodes[static_cast<size_t>(t.children[0][1])].id == "a");
  CHECK(t.nodes[static_cast<size_t>(t.children[0][2])].id == "z");
}

TEST_CASE("cascades are ordered by root time then id") {
  std::vector<ThreadEvent> events{
      post("later", 500),
      post("early", 100),
      post("tie_b", 300),
      post("tie_a", 300),
  };
  BuildStats stats;
  auto trees = build_cascades(events, stats);
  REQUIRE(trees.size() == 4);
  CHECK(trees[0].nodes[0].id == "early");
  CHECK(trees[1].nodes[0].id == "tie_a");
  CHECK(trees[2].nodes[0].id == "tie_b");
  CHECK(trees[3].nodes[0].id == "later");
}

TEST_CASE("duplicate post ids keep the first") {
  std::vector<ThreadEvent> events{
      post("p", 100, "one"),
      post("p", 200, "two"),
      comment("a", "p", "p", 300),
  };
  BuildStats stats;
  auto trees = build_cascades(events, stats);
  REQUIRE(trees.size() == 1);
  CHECK(trees[0].nodes[0].author == "one");
  CHECK(trees[0].nodes.size() == 2);
  CHECK(stats.duplicates == 1);
}

TEST_CASE("self-referencing comment never places") {
  std::vector<ThreadEvent> events{
      post("p", 100),
      comment("loop", "loop", "p", 200),
  };
  BuildStats stats;
  auto trees = build_cascades(events, stats);
  CHECK(trees[0].nodes.size() == 1);
  CHECK(stats.orphans == 1);
}
