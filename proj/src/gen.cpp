#include "dfsidx/gen.hpp"

#include <unordered_set>

namespace dfsidx {

namespace {

uint64_t edge_key(Vertex u, Vertex v) { return (uint64_t(u) << 32) | v; }

void add_undirected(AdjacencyGraph& g, Vertex u, Vertex v, uint64_t w) {
  g.add_arc(u, v, w);
  g.add_arc(v, u, w);
}

}  // namespace

AdjacencyGraph gen_tree_graph(Vertex n, uint64_t seed) {
  Rng rng(seed);
  AdjacencyGraph g(n, false);
  g.set_edge_count(n >= 1 ? n - 1 : 0);
  for (Vertex v = 2; v <= n; ++v) {
    Vertex p = Vertex(rng.below(v - 1) + 1);
    add_undirected(g, p, v, 1);
  }
  g.freeze();
  return g;
}

AdjacencyGraph gen_connected_undirected(Vertex n, uint64_t m, uint64_t seed, bool weighted,
                                        uint64_t max_weight) {
  Rng rng(seed);
  if (n >= 2 && m < n - 1) m = n - 1;
  uint64_t max_edges = uint64_t(n) * (n - 1) / 2;
  if (m > max_edges) m = max_edges;
  AdjacencyGraph g(n, false, weighted);
  g.set_edge_count(m);
  std::unordered_set<uint64_t> seen;
  seen.reserve(size_t(m) * 2);
  auto weight = [&]() { return weighted ? rng.below(max_weight + 1) : 1; };
  for (Vertex v = 2; v <= n; ++v) {
    Vertex p = Vertex(rng.below(v - 1) + 1);
    seen.insert(edge_key(std::min(p, v), std::max(p, v)));
    add_undirected(g, p, v, weight());
  }
  uint64_t added = n >= 1 ? n - 1 : 0;
  while (added < m) {
    Vertex u = Vertex(rng.below(n) + 1);
    Vertex v = Vertex(rng.below(n) + 1);
    if (u == v) continue;
    uint64_t key = edge_key(std::min(u, v), std::max(u, v));
    if (!seen.insert(key).second) continue;
    add_undirected(g, u, v, weight());
    ++added;
  }
  g.freeze();
  return g;
}

AdjacencyGraph gen_directed(Vertex n, uint64_t m, uint64_t seed) {
  Rng rng(seed);
  uint64_t max_edges = uint64_t(n) * (n - 1);
  if (m > max_edges) m = max_edges;
  AdjacencyGraph g(n, true);
  g.set_edge_count(m);
  std::unordered_set<uint64_t> seen;
  seen.reserve(size_t(m) * 2);
  uint64_t added = 0;
  while (added < m) {
    Vertex u = Vertex(rng.below(n) + 1);
    Vertex v = Vertex(rng.below(n) + 1);
    if (u == v || !seen.insert(edge_key(u, v)).second) continue;
    g.add_arc(u, v);
    g.add_in_arc(v, u);
    ++added;
  }
  g.freeze();
  return g;
}

AdjacencyGraph gen_undirected(Vertex n, uint64_t m, uint64_t seed) {
  Rng rng(seed);
  uint64_t max_edges = uint64_t(n) * (n - 1) / 2;
  if (m > max_edges) m = max_edges;
  AdjacencyGraph g(n, false);
  g.set_edge_count(m);
  std::unordered_set<uint64_t> seen;
  uint64_t added = 0;
  while (added < m) {
    Vertex u = Vertex(rng.below(n) + 1);
    Vertex v = Vertex(rng.below(n) + 1);
    if (u == v) continue;
    uint64_t key = edge_key(std::min(u, v), std::max(u, v));
    if (!seen.insert(key).second) continue;
    add_undirected(g, u, v, 1);
    ++added;
  }
  g.freeze();
  return g;
}

}  // namespace dfsidx
