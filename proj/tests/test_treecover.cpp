#include <doctest.h>

#include <set>

#include "dfsidx/dfsindex.hpp"
#include "dfsidx/gen.hpp"
#include "dfsidx/treecover.hpp"

using namespace dfsidx;

namespace {

DfsResult tree_of(const AdjacencyGraph& g, Vertex src = 1) { return lex_dfs(g, src); }

void check_valid(const TreeCover& cover, const DfsResult& t) {
  auto bad = tc_validate(cover, t);
  for (const auto& msg : bad) FAIL_CHECK(msg);
  CHECK(bad.empty());
}

// Walk-up reference for level ancestor checks.
uint32_t walk_up(const Skeleton& s, uint32_t x, uint32_t level) {
  while (s.skel_depth[x] > level) x = s.parent[x];
  return x;
}

}  // namespace

TEST_SUITE("treecover") {
  TEST_CASE("single vertex") {
    AdjacencyGraph g = parse_graph_text("1 0 undirected\n\n");
    DfsResult t = tree_of(g);
    TreeCover cover = tc_decompose(t, 4);
    REQUIRE(cover.minitrees.size() == 1);
    CHECK(cover.minitrees[0].root == 1);
    CHECK(cover.minitrees[0].out_c == 0);
    CHECK(cover.minitrees[0].rightmost_leaf == 1);
    check_valid(cover, t);
  }

  TEST_CASE("ten-vertex path with L=2") {
    AdjacencyGraph g = gen_tree_graph(10, 5);
    // Force an actual path: build explicitly.
    AdjacencyGraph path(10, false);
    path.set_edge_count(9);
    for (Vertex v = 1; v < 10; ++v) {
      path.add_arc(v, v + 1);
      path.add_arc(v + 1, v);
    }
    (void)g;
    DfsResult t = tree_of(path);
    TreeCover cover = tc_decompose(t, 2);
    for (const auto& m : cover.minitrees) CHECK(m.nodes.size() <= 4);
    CHECK(cover.minitrees.size() * 2 <= 8 * 10);
    check_valid(cover, t);
  }

  TEST_CASE("fixture cover invariants at L=2") {
    AdjacencyGraph g = parse_graph_text("6 6 undirected\n2 3\n1 4 5\n1 5\n2\n2 3 6\n5\n");
    DfsResult t = tree_of(g);
    TreeCover cover = tc_decompose(t, 2);
    check_valid(cover, t);
    std::set<Vertex> all;
    for (const auto& m : cover.minitrees) all.insert(m.nodes.begin(), m.nodes.end());
    CHECK(all.size() == 6);
  }

  TEST_CASE("invariants across random trees and parameters") {
    for (uint64_t seed = 1; seed <= 30; ++seed) {
      Vertex n = Vertex(2 + seed * 37 % 3000);
      AdjacencyGraph g = gen_tree_graph(n, seed);
      DfsResult t = tree_of(g);
      for (uint32_t L : {1u, 2u, 5u, default_cover_param(n)}) {
        TreeCover cover = tc_decompose(t, L);
        check_valid(cover, t);
      }
    }
  }

  TEST_CASE("star graph shares the root across minitrees") {
    Vertex n = 64;
    AdjacencyGraph star(n, false);
    star.set_edge_count(n - 1);
    for (Vertex v = 2; v <= n; ++v) {
      star.add_arc(1, v);
      star.add_arc(v, 1);
    }
    DfsResult t = tree_of(star);
    TreeCover cover = tc_decompose(t, 4);
    check_valid(cover, t);
    CHECK(cover.root_minitrees[1].size() > 1);
    Skeleton s = tc_skeleton_build(cover, t);
    CHECK(s.size() == 1);
    CHECK(s.root_pointers[0].size() == cover.minitrees.size());
  }

  TEST_CASE("skeleton of a single minitree") {
    AdjacencyGraph g = gen_tree_graph(6, 2);
    DfsResult t = tree_of(g);
    TreeCover cover = tc_decompose(t, 8);
    Skeleton s = tc_skeleton_build(cover, t);
    if (cover.minitrees.size() == 1) {
      CHECK(s.size() == 1);
      CHECK(s.children[0].empty());
    }
    CHECK(s.skel_depth[s.id_of(1)] == 0);
  }

  TEST_CASE("skeleton depths and parents are consistent") {
    for (uint64_t seed = 40; seed <= 46; ++seed) {
      AdjacencyGraph g = gen_tree_graph(800, seed);
      DfsResult t = tree_of(g);
      TreeCover cover = tc_decompose(t, 3);
      Skeleton s = tc_skeleton_build(cover, t);
      for (uint32_t i = 0; i < s.size(); ++i) {
        if (s.parent[i] == Skeleton::kNone)
          CHECK(s.skel_depth[i] == 0);
        else
          CHECK(s.skel_depth[i] == s.skel_depth[s.parent[i]] + 1);
        CHECK(s.tree_depth[i] == t.depth[s.roots[i]]);
      }
      // Every minitree appears exactly once among the root pointers.
      size_t total = 0;
      for (const auto& ptrs : s.root_pointers) total += ptrs.size();
      CHECK(total == cover.minitrees.size());
    }
  }

  TEST_CASE("level ancestor: fixtures") {
    // A three-node path in the skeleton arises from a path tree with L=1.
    AdjacencyGraph path(7, false);
    path.set_edge_count(6);
    for (Vertex v = 1; v < 7; ++v) {
      path.add_arc(v, v + 1);
      path.add_arc(v + 1, v);
    }
    DfsResult t = tree_of(path);
    TreeCover cover = tc_decompose(t, 1);
    Skeleton s = tc_skeleton_build(cover, t);
    LevelAncestorIndex la(s);
    for (uint32_t x = 0; x < s.size(); ++x) {
      CHECK(la.query(x, s.skel_depth[x]) == x);
      CHECK(la.query(x, 0) == walk_up(s, x, 0));
      if (s.skel_depth[x] >= 1)
        CHECK(la.query(x, s.skel_depth[x] - 1) == s.parent[x]);
    }
    CHECK_THROWS_AS(la.query(0, 1), std::out_of_range);
  }

  TEST_CASE("level ancestor matches walk-up everywhere") {
    for (uint64_t seed = 60; seed <= 70; ++seed) {
      AdjacencyGraph g = gen_tree_graph(Vertex(50 + seed * 97 % 1000), seed);
      DfsResult t = tree_of(g);
      TreeCover cover = tc_decompose(t, 1 + seed % 3);
      Skeleton s = tc_skeleton_build(cover, t);
      LevelAncestorIndex la(s);
      for (uint32_t x = 0; x < s.size(); ++x)
        for (uint32_t lvl = 0; lvl <= s.skel_depth[x]; ++lvl)
          CHECK(la.query(x, lvl) == walk_up(s, x, lvl));
    }
  }

  TEST_CASE("level ancestor serialization") {
    AdjacencyGraph g = gen_tree_graph(300, 5);
    DfsResult t = tree_of(g);
    TreeCover cover = tc_decompose(t, 2);
    Skeleton s = tc_skeleton_build(cover, t);
    LevelAncestorIndex la(s);
    ByteWriter w;
    la.serialize(w);
    ByteReader r(w.data().data(), w.size());
    LevelAncestorIndex la2 = LevelAncestorIndex::deserialize(r);
    for (uint32_t x = 0; x < s.size(); ++x)
      CHECK(la2.query(x, 0) == la.query(x, 0));
  }

  TEST_CASE("decomposition rejects bad parameters") {
    AdjacencyGraph g = gen_tree_graph(5, 1);
    DfsResult t = tree_of(g);
    CHECK_THROWS_AS(tc_decompose(t, 0), std::invalid_argument);
  }
}
