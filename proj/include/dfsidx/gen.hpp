#pragma once

#include <cstdint>

#include "dfsidx/graph.hpp"

namespace dfsidx {

// Deterministic seeded generator (splitmix64); the same seed reproduces the
// same graph on any host.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }

 private:
  uint64_t state_;
};

// Random spanning tree (uniform-attachment parents) as an undirected graph;
// adjacency order is the edge insertion order.
AdjacencyGraph gen_tree_graph(Vertex n, uint64_t seed);

// Connected undirected graph: spanning tree plus distinct extra edges up to m
// total. Weighted variants draw weights in [0, max_weight].
AdjacencyGraph gen_connected_undirected(Vertex n, uint64_t m, uint64_t seed,
                                        bool weighted = false, uint64_t max_weight = 1000);

// Directed graph with m distinct arcs; the in-arrays mirror insertion order.
AdjacencyGraph gen_directed(Vertex n, uint64_t m, uint64_t seed);

// Undirected graph that may be disconnected: m distinct edges, no tree base.
AdjacencyGraph gen_undirected(Vertex n, uint64_t m, uint64_t seed);

}  // namespace dfsidx
