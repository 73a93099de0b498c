#include <doctest.h>

#include <set>

#include "dfsidx/dfsindex.hpp"
#include "dfsidx/gen.hpp"

using namespace dfsidx;

namespace {

AdjacencyGraph g6() {
  return parse_graph_text("6 6 undirected\n2 3\n1 4 5\n1 5\n2\n2 3 6\n5\n");
}

std::string bits_of(const BitvecAny& bv) {
  std::string s(bv.size(), '0');
  for (uint64_t j = 1; j <= bv.ones(); ++j) s[bv.select1(j) - 1] = '1';
  return s;
}

std::string bits_of(const PlainBitvector& bv) {
  std::string s(bv.size(), '0');
  for (uint64_t i = 1; i <= bv.size(); ++i)
    if (bv.bit(i)) s[i - 1] = '1';
  return s;
}

// Exhaustively compares every query kind against the traversal itself.
void check_full_equivalence(const AdjacencyGraph& g, Vertex source, const DfsIndex& idx) {
  DfsResult t = lex_dfs(g, source);
  Vertex n = g.num_vertices();
  for (Vertex v = 1; v <= n; ++v) {
    if (!t.is_reached(v)) {
      CHECK_THROWS_AS(idx.parent(g, v), std::domain_error);
      CHECK_THROWS_AS(idx.dfi(g, v), std::domain_error);
      continue;
    }
    CHECK(idx.parent(g, v) == t.parent[v]);
    CHECK(idx.num_children(v) == t.children[v].size());
    CHECK(idx.children(g, v) == t.children[v]);
    CHECK(idx.dfi(g, v) == t.dfi[v]);
    CHECK(idx.subtree_size(g, v) == t.subtree_size[v]);
  }
  for (uint32_t i = 1; i <= t.reached(); ++i) CHECK(idx.vertex_at_dfi(g, i) == t.order[i - 1]);
  CHECK(idx.preorder(g) == t.order);
  for (Vertex u = 1; u <= n; ++u) {
    if (!t.is_reached(u)) continue;
    for (Vertex v = 1; v <= n; ++v) {
      if (!t.is_reached(v)) continue;
      CHECK(idx.is_ancestor(g, u, v) == t.is_ancestor(u, v));
      CHECK(idx.first_visited(g, u, v) == t.first_visited(u, v));
    }
  }
}

}  // namespace

TEST_SUITE("dfsindex") {
  TEST_CASE("fixture bit patterns") {
    DfsIndex idx = DfsIndex::build(g6(), 1, BuildMode::Plain);
    CHECK(bits_of(idx.bits().D_child()) == "100100010010100010");
    std::set<uint64_t> e_ones, p_ones;
    for (uint64_t j = 1; j <= idx.bits().E_child().ones(); ++j)
      e_ones.insert(idx.bits().E_child().select1(j));
    for (uint64_t j = 1; j <= idx.bits().P().ones(); ++j) p_ones.insert(idx.bits().P().select1(j));
    CHECK(e_ones == std::set<uint64_t>{2, 6, 7, 15, 16});
    CHECK(p_ones == std::set<uint64_t>{5, 10, 12, 14, 18});
    // Unary tree degrees 1,2,0,0,2,0 concatenate as 10|100|1|1|100|1.
    CHECK(bits_of(idx.bits().D_T()) == "10100111001");
  }

  TEST_CASE("fixture parent formula trace") {
    AdjacencyGraph g = g6();
    DfsIndex idx = DfsIndex::build(g, 1, BuildMode::Plain);
    // p = select1(P, 2) = 10, j = 10 - select1(D, 3) = 2, neighbor(3, 2) = 5.
    CHECK(idx.bits().P().select1(2) == 10);
    CHECK(idx.bits().D_child().select1(3) == 8);
    CHECK(idx.parent(g, 3) == 5);
    CHECK(idx.parent(g, 1) == kNoVertex);
    CHECK(idx.parent(g, 6) == 5);
  }

  TEST_CASE("fixture child formula trace") {
    AdjacencyGraph g = g6();
    DfsIndex idx = DfsIndex::build(g, 1, BuildMode::Plain);
    // base = select1(D_T, 5) - 5 = 3; select1(E, 4) = 15; 15 - 13 = slot 2.
    CHECK(idx.bits().D_T().select1(5) == 8);
    CHECK(idx.bits().E_child().select1(4) == 15);
    CHECK(idx.children(g, 5) == std::vector<Vertex>{3, 6});
    CHECK(idx.children(g, 4).empty());
    CHECK(idx.children(g, 1) == std::vector<Vertex>{2});
    CHECK(idx.num_children(2) == 2);
    CHECK(idx.num_children(4) == 0);
    CHECK(idx.num_children(1) == 1);
  }

  TEST_CASE("fixture queries") {
    AdjacencyGraph g = g6();
    DfsIndex idx = DfsIndex::build(g, 1);
    CHECK(idx.dfi(g, 4) == 3);
    CHECK(idx.dfi(g, 1) == 1);
    CHECK(idx.dfi(g, 3) == 5);
    CHECK(idx.first_visited(g, 3, 4) == 4);
    CHECK(idx.first_visited(g, 5, 5) == 5);
    CHECK(idx.first_visited(g, 1, 6) == 1);
    CHECK(idx.subtree_size(g, 2) == 5);
    CHECK(idx.subtree_size(g, 6) == 1);
    CHECK(idx.is_ancestor(g, 2, 6));
    CHECK_FALSE(idx.is_ancestor(g, 6, 2));
    CHECK_FALSE(idx.is_ancestor(g, 3, 3));
    for (Vertex x = 2; x <= 6; ++x) CHECK(idx.is_ancestor(g, 1, x));
    CHECK(idx.preorder(g) == std::vector<Vertex>{1, 2, 4, 5, 3, 6});
    CHECK(idx.vertex_at_dfi(g, 1) == 1);
    CHECK(idx.vertex_at_dfi(g, 4) == 5);
    CHECK_THROWS_AS(idx.vertex_at_dfi(g, 7), std::out_of_range);
  }

  TEST_CASE("reconstruction on a single-minitree tree") {
    AdjacencyGraph g = gen_tree_graph(9, 3);
    DfsIndex idx = DfsIndex::build(g, 1);
    DfsResult t = lex_dfs(g, 1);
    // With L = ceil(lg 9) = 4 small trees may still split; find a non-root.
    for (Vertex v = 1; v <= 9; ++v) {
      if (idx.cover().is_minitree_root(v)) continue;
      auto rec = idx.reconstruct_minitree(g, v);
      for (size_t i = 0; i < rec.nodes.size(); ++i)
        CHECK(rec.dfis[i] == t.dfi[rec.nodes[i]]);
    }
  }

  TEST_CASE("reconstruction equals the cover's ground truth") {
    for (uint64_t seed = 1; seed <= 12; ++seed) {
      Vertex n = Vertex(20 + (seed * 131) % 500);
      AdjacencyGraph g = gen_tree_graph(n, seed);
      DfsResult t = lex_dfs(g, 1);
      DfsIndex idx = DfsIndex::build(g, 1);
      TreeCover cover = tc_decompose(t, default_cover_param(n));
      for (Vertex v = 1; v <= n; ++v) {
        if (cover.is_root[v]) {
          CHECK(idx.cover().is_minitree_root(v));
          continue;
        }
        auto rec = idx.reconstruct_minitree(g, v);
        const Minitree& m = cover.minitrees[size_t(cover.owner_nonroot[v])];
        std::set<Vertex> got(rec.nodes.begin(), rec.nodes.end());
        std::set<Vertex> want(m.nodes.begin(), m.nodes.end());
        CHECK(got == want);
        for (size_t i = 0; i < rec.nodes.size(); ++i)
          CHECK(rec.dfis[i] == t.dfi[rec.nodes[i]]);
      }
    }
  }

  TEST_CASE("full oracle equivalence on random undirected graphs") {
    for (uint64_t seed = 1; seed <= 8; ++seed) {
      Vertex n = Vertex(4 + (seed * 53) % 90);
      AdjacencyGraph g = gen_connected_undirected(n, uint64_t(n) * 2, seed);
      check_full_equivalence(g, 1 + Vertex(seed % n), DfsIndex::build(g, 1 + Vertex(seed % n)));
    }
  }

  TEST_CASE("full oracle equivalence on random directed graphs") {
    for (uint64_t seed = 1; seed <= 8; ++seed) {
      Vertex n = Vertex(4 + (seed * 61) % 90);
      AdjacencyGraph g = gen_directed(n, uint64_t(n) * 3, seed);
      Vertex src = 1 + Vertex(seed % n);
      check_full_equivalence(g, src, DfsIndex::build(g, src));
    }
  }

  TEST_CASE("plain and compressed answers are identical") {
    for (uint64_t seed = 3; seed <= 7; ++seed) {
      Vertex n = 60;
      AdjacencyGraph g = gen_connected_undirected(n, 300, seed);
      DfsIndex plain = DfsIndex::build(g, 2, BuildMode::Plain);
      DfsIndex comp = DfsIndex::build(g, 2, BuildMode::Compressed);
      CHECK(comp.compressed());
      CHECK_FALSE(plain.compressed());
      for (Vertex v = 1; v <= n; ++v) {
        CHECK(plain.parent(g, v) == comp.parent(g, v));
        CHECK(plain.dfi(g, v) == comp.dfi(g, v));
        CHECK(plain.subtree_size(g, v) == comp.subtree_size(g, v));
        CHECK(plain.children(g, v) == comp.children(g, v));
      }
      CHECK(plain.preorder(g) == comp.preorder(g));
    }
  }

  TEST_CASE("auto mode picks compression on dense inputs") {
    AdjacencyGraph sparse = gen_connected_undirected(50, 100, 1);
    AdjacencyGraph dense = gen_connected_undirected(50, 50 * 12, 1);
    CHECK_FALSE(DfsIndex::build(sparse, 1).compressed());
    CHECK(DfsIndex::build(dense, 1).compressed());
  }

  TEST_CASE("children/parent inversion and dfi round trip") {
    AdjacencyGraph g = gen_connected_undirected(120, 240, 19);
    DfsIndex idx = DfsIndex::build(g, 1);
    for (Vertex v : idx.preorder(g)) {
      auto kids = idx.children(g, v);
      CHECK(kids.size() == idx.num_children(v));
      for (Vertex c : kids) CHECK(idx.parent(g, c) == v);
      CHECK(idx.vertex_at_dfi(g, idx.dfi(g, v)) == v);
    }
  }

  TEST_CASE("ancestor order is consistent with DFI") {
    AdjacencyGraph g = gen_connected_undirected(60, 150, 23);
    DfsIndex idx = DfsIndex::build(g, 1);
    for (Vertex u = 1; u <= 60; ++u)
      for (Vertex v = 1; v <= 60; ++v)
        if (idx.is_ancestor(g, u, v)) CHECK(idx.dfi(g, u) < idx.dfi(g, v));
  }

  TEST_CASE("space report payload sizes for the fixture") {
    DfsIndex idx = DfsIndex::build(g6(), 1, BuildMode::Plain);
    SpaceReport rep = idx.space_report();
    CHECK(rep.value("D_bits") == 18);
    CHECK(rep.value("E_bits") == 18);
    CHECK(rep.value("P_bits") == 18);
    CHECK(rep.total_bits > 0);
  }

  TEST_CASE("single-vertex graph") {
    AdjacencyGraph g = parse_graph_text("1 0 undirected\n\n");
    DfsIndex idx = DfsIndex::build(g, 1);
    SpaceReport rep = idx.space_report();
    CHECK(rep.value("D_bits") == 1);
    CHECK(idx.parent(g, 1) == kNoVertex);
    CHECK(idx.preorder(g) == std::vector<Vertex>{1});
    CHECK(idx.dfi(g, 1) == 1);
    CHECK(idx.subtree_size(g, 1) == 1);
  }

  TEST_CASE("source out of range is rejected") {
    AdjacencyGraph g = g6();
    CHECK_THROWS_AS(DfsIndex::build(g, 99), std::out_of_range);
    CHECK_THROWS_AS(DfsIndex::build(g, 0), std::out_of_range);
  }

  TEST_CASE("serialization preserves every answer") {
    AdjacencyGraph g = gen_connected_undirected(80, 200, 31);
    DfsIndex idx = DfsIndex::build(g, 4);
    ByteWriter w;
    idx.serialize(w);
    ByteReader r(w.data().data(), w.size());
    DfsIndex idx2 = DfsIndex::deserialize(r);
    for (Vertex v = 1; v <= 80; ++v) {
      CHECK(idx2.parent(g, v) == idx.parent(g, v));
      CHECK(idx2.dfi(g, v) == idx.dfi(g, v));
      CHECK(idx2.subtree_size(g, v) == idx.subtree_size(g, v));
    }
    CHECK(idx2.preorder(g) == idx.preorder(g));
  }
}
