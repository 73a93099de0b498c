#include <doctest.h>

#include <set>

#include "dfsidx/apps.hpp"
#include "dfsidx/gen.hpp"
#include "oracles.hpp"

using namespace dfsidx;

TEST_SUITE("apps") {
  TEST_CASE("sp: unit weights reduce to BFS levels") {
    AdjacencyGraph g = gen_connected_undirected(40, 80, 2);
    SpIndex idx = SpIndex::build(g, 1);
    auto dist = oracle::naive_dijkstra(g, 1);  // all weights 1
    for (Vertex v = 1; v <= 40; ++v) CHECK(idx.dist(g, v) == dist[v]);
  }

  TEST_CASE("sp: two vertices with one weighted edge") {
    AdjacencyGraph g = parse_graph_text("2 1 undirected weighted\n2:7\n1:7\n");
    SpIndex idx = SpIndex::build(g, 1);
    CHECK(idx.dist(g, 2) == 7);
    CHECK(idx.dist(g, 1) == 0);
    CHECK(idx.path(g, 1) == std::vector<Vertex>{1});
    CHECK(idx.path(g, 2) == std::vector<Vertex>{1, 2});
  }

  TEST_CASE("sp: random weighted graphs match the array oracle") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
      Vertex n = Vertex(4 + (seed * 37) % 250);
      AdjacencyGraph g = gen_connected_undirected(n, uint64_t(n) * 2, seed, true, 50);
      SpIndex idx = SpIndex::build(g, 1);
      auto dist = oracle::naive_dijkstra(g, 1);
      for (Vertex v = 1; v <= n; ++v) {
        CHECK(idx.dist(g, v) == dist[v]);
        auto path = idx.path(g, v);
        REQUIRE(!path.empty());
        CHECK(path.front() == 1);
        CHECK(path.back() == v);
        uint64_t sum = 0;
        for (size_t i = 1; i < path.size(); ++i) {
          uint32_t slot = g.find_out_slot(path[i - 1], path[i]);
          sum += g.weight_at(path[i - 1], slot);
        }
        CHECK(sum == dist[v]);
      }
      // Triangle inequality across all edges.
      for (Vertex v = 1; v <= n; ++v)
        for (uint32_t j = 1; j <= g.out_degree(v); ++j)
          CHECK(dist[g.neighbor(v, j)] <= dist[v] + g.weight_at(v, j));
    }
  }

  TEST_CASE("sp: directed weighted") {
    AdjacencyGraph g = parse_graph_text(
        "3 3 directed weighted\n2:5 3:20\n3:4\n\n--\n\n1:5\n1:20 2:4\n");
    SpIndex idx = SpIndex::build(g, 1);
    CHECK(idx.dist(g, 2) == 5);
    CHECK(idx.dist(g, 3) == 9);
    CHECK(idx.path(g, 3) == std::vector<Vertex>{1, 2, 3});
  }

  TEST_CASE("sp: unreachable vertices are rejected") {
    AdjacencyGraph g = parse_graph_text("3 1 directed\n2\n\n\n--\n\n1\n\n");
    SpIndex idx = SpIndex::build(g, 1);
    CHECK_THROWS_AS(idx.dist(g, 3), std::domain_error);
  }

  TEST_CASE("conn: fixture and reflexivity") {
    AdjacencyGraph g = parse_graph_text("6 6 undirected\n2 3\n1 4 5\n1 5\n2\n2 3 6\n5\n");
    ConnIndex idx = ConnIndex::build(g);
    CHECK(idx.connected(g, 1, 6));
    for (Vertex v = 1; v <= 6; ++v) CHECK(idx.connected(g, v, v));
  }

  TEST_CASE("conn: two components") {
    AdjacencyGraph g = parse_graph_text("4 2 undirected\n2\n1\n4\n3\n");
    ConnIndex idx = ConnIndex::build(g);
    CHECK(idx.connected(g, 1, 2));
    CHECK(idx.connected(g, 3, 4));
    CHECK_FALSE(idx.connected(g, 1, 3));
    CHECK_FALSE(idx.connected(g, 2, 4));
  }

  TEST_CASE("conn: random graphs match union-find") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
      Vertex n = Vertex(4 + (seed * 41) % 250);
      AdjacencyGraph g = gen_undirected(n, uint64_t(n), seed);
      ConnIndex idx = ConnIndex::build(g);
      auto dsu = oracle::components(g);
      for (Vertex u = 1; u <= n; ++u)
        for (Vertex v = u; v <= n; ++v)
          CHECK(idx.connected(g, u, v) == (dsu.find(u) == dsu.find(v)));
    }
  }

  TEST_CASE("scc: a DAG has singleton components") {
    AdjacencyGraph g = parse_graph_text(
        "5 4 directed\n2\n3\n4\n5\n\n--\n\n1\n2\n3\n4\n");
    SccIndex idx = SccIndex::build(g);
    CHECK(idx.num_components() == 5);
    for (Vertex u = 1; u <= 5; ++u)
      for (Vertex v = u + 1; v <= 5; ++v) CHECK_FALSE(idx.same_component(g, u, v));
    CHECK(idx.component_roots().size() == 5);
  }

  TEST_CASE("scc: a directed cycle is one component") {
    AdjacencyGraph g = parse_graph_text("3 3 directed\n2\n3\n1\n--\n3\n1\n2\n");
    SccIndex idx = SccIndex::build(g);
    CHECK(idx.num_components() == 1);
    auto ms = idx.members(g, 2);
    std::set<Vertex> s(ms.begin(), ms.end());
    CHECK(s == std::set<Vertex>{1, 2, 3});
    CHECK(idx.same_component(g, 1, 3));
  }

  TEST_CASE("scc: random digraphs match Tarjan") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
      Vertex n = Vertex(4 + (seed * 47) % 250);
      AdjacencyGraph g = gen_directed(n, uint64_t(n) * 2, seed);
      SccIndex idx = SccIndex::build(g);
      auto comp = oracle::tarjan_scc(g);
      for (Vertex u = 1; u <= n; ++u) {
        auto ms = idx.members(g, u);
        std::set<Vertex> got(ms.begin(), ms.end());
        std::set<Vertex> want;
        for (Vertex v = 1; v <= n; ++v)
          if (comp[v] == comp[u]) want.insert(v);
        CHECK(got == want);
        for (Vertex v = u; v <= n; ++v)
          CHECK(idx.same_component(g, u, v) == (comp[u] == comp[v]));
      }
      // The component roots enumerate one representative per class.
      std::set<uint32_t> classes;
      for (Vertex r : idx.component_roots()) classes.insert(comp[r]);
      std::set<uint32_t> all(comp.begin() + 1, comp.end());
      CHECK(classes == all);
    }
  }

  TEST_CASE("bicon: a triangle has no cut vertices") {
    AdjacencyGraph g = parse_graph_text("3 3 undirected\n2 3\n1 3\n1 2\n");
    BiconIndex idx = BiconIndex::build(g);
    for (Vertex v = 1; v <= 3; ++v) CHECK_FALSE(idx.is_cut(v));
    auto edges = idx.component_edges(g, 1, 2);
    CHECK(edges.size() == 3);
  }

  TEST_CASE("bicon: two triangles sharing a vertex") {
    // Triangles {1,2,3} and {3,4,5} share vertex 3.
    AdjacencyGraph g = parse_graph_text(
        "5 6 undirected\n2 3\n1 3\n1 2 4 5\n3 5\n3 4\n");
    BiconIndex idx = BiconIndex::build(g);
    CHECK(idx.is_cut(3));
    for (Vertex v : {1u, 2u, 4u, 5u}) CHECK_FALSE(idx.is_cut(Vertex(v)));
    CHECK(idx.cut_vertices() == std::vector<Vertex>{3});
    auto a = idx.component_edges(g, 1, 2);
    auto b = idx.component_edges(g, 4, 5);
    CHECK(a.size() == 3);
    CHECK(b.size() == 3);
    CHECK_FALSE(idx.same_component(g, {1, 2}, {4, 5}));
    CHECK(idx.same_component(g, {1, 2}, {1, 3}));
  }

  TEST_CASE("bicon: random graphs match the block oracle") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
      Vertex n = Vertex(4 + (seed * 53) % 250);
      AdjacencyGraph g = gen_connected_undirected(n, uint64_t(n) * 3 / 2, seed);
      BiconIndex idx = BiconIndex::build(g);
      auto bo = oracle::bicon_oracle(g);
      for (Vertex v = 1; v <= n; ++v) CHECK(idx.is_cut(v) == bool(bo.is_cut[v]));
      for (Vertex u = 1; u <= n; ++u)
        for (Vertex v : g.out_neighbors(u)) {
          if (v < u) continue;
          auto got = idx.component_edges(g, u, v);
          const auto& want = bo.blocks[bo.block_of.at({u, v})];
          CHECK(got == want);
        }
    }
  }

  TEST_CASE("tecc: every path edge is a bridge, no cycle edge is") {
    AdjacencyGraph path = parse_graph_text("4 3 undirected\n2\n1 3\n2 4\n3\n");
    TeccIndex p = TeccIndex::build(path);
    CHECK(p.is_bridge(path, 1, 2));
    CHECK(p.is_bridge(path, 3, 2));
    CHECK(p.bridges(path).size() == 3);
    CHECK(p.component_edges(path, 1, 2) == std::vector<Edge>{{1, 2}});

    AdjacencyGraph cyc = parse_graph_text("4 4 undirected\n2 4\n1 3\n2 4\n3 1\n");
    TeccIndex c = TeccIndex::build(cyc);
    for (Vertex v = 1; v <= 4; ++v)
      for (Vertex u : cyc.out_neighbors(v)) CHECK_FALSE(c.is_bridge(cyc, v, u));
    CHECK(c.bridges(cyc).empty());
    CHECK(c.component_edges(cyc, 1, 2).size() == 4);
  }

  TEST_CASE("tecc: random graphs match the bridge oracle") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
      Vertex n = Vertex(4 + (seed * 59) % 250);
      AdjacencyGraph g = gen_connected_undirected(n, uint64_t(n) * 3 / 2, seed);
      TeccIndex idx = TeccIndex::build(g);
      auto to = oracle::tecc_oracle(g);
      std::set<Edge> got_bridges;
      for (auto e : idx.bridges(g)) got_bridges.insert(e);
      CHECK(got_bridges == to.bridges);
      for (Vertex u = 1; u <= n; ++u)
        for (Vertex v : g.out_neighbors(u)) {
          if (v < u) continue;
          CHECK(idx.is_bridge(g, u, v) == bool(to.bridges.count({u, v})));
          auto edges = idx.component_edges(g, u, v);
          if (to.bridges.count({u, v})) {
            CHECK(edges == std::vector<Edge>{{u, v}});
          } else {
            for (auto [a, b] : edges) {
              CHECK(to.class_of_vertex[a] == to.class_of_vertex[u]);
              CHECK(to.class_of_vertex[b] == to.class_of_vertex[u]);
              CHECK_FALSE(to.bridges.count({a, b}));
            }
            // Every non-bridge edge inside the class appears.
            size_t expect = 0;
            for (Vertex a = 1; a <= n; ++a)
              for (Vertex b : g.out_neighbors(a))
                if (a < b && !to.bridges.count({a, b}) &&
                    to.class_of_vertex[a] == to.class_of_vertex[u] &&
                    to.class_of_vertex[b] == to.class_of_vertex[u])
                  ++expect;
            CHECK(edges.size() == expect);
          }
        }
    }
  }

  TEST_CASE("apps reject the wrong graph kind") {
    AdjacencyGraph und = gen_connected_undirected(10, 20, 1);
    AdjacencyGraph dir = gen_directed(10, 20, 1);
    CHECK_THROWS_AS(ConnIndex::build(dir), std::invalid_argument);
    CHECK_THROWS_AS(SccIndex::build(und), std::invalid_argument);
    CHECK_THROWS_AS(BiconIndex::build(dir), std::invalid_argument);
    AdjacencyGraph disc = parse_graph_text("4 2 undirected\n2\n1\n4\n3\n");
    CHECK_THROWS_AS(BiconIndex::build(disc), std::invalid_argument);
    CHECK_THROWS_AS(TeccIndex::build(disc), std::invalid_argument);
  }

  TEST_CASE("app serialization round trips") {
    AdjacencyGraph g = gen_connected_undirected(60, 120, 3, true, 30);
    SpIndex sp = SpIndex::build(g, 1);
    ByteWriter w;
    sp.serialize(w);
    ByteReader r(w.data().data(), w.size());
    SpIndex sp2 = SpIndex::deserialize(r);
    for (Vertex v = 1; v <= 60; ++v) CHECK(sp2.dist(g, v) == sp.dist(g, v));

    AdjacencyGraph d = gen_directed(50, 120, 4);
    SccIndex scc = SccIndex::build(d);
    ByteWriter w2;
    scc.serialize(w2);
    ByteReader r2(w2.data().data(), w2.size());
    SccIndex scc2 = SccIndex::deserialize(r2);
    for (Vertex v = 1; v <= 50; ++v)
      CHECK(scc2.component_root(d, v) == scc.component_root(d, v));
  }
}
