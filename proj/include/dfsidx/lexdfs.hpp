#pragma once

#include <cstdint>
#include <vector>

#include "dfsidx/graph.hpp"

namespace dfsidx {

// Result of a lexicographic DFS: the unique DFS tree obtained by always
// exploring the first unvisited neighbor in adjacency-array order. Vertices
// not reachable from the source carry dfi 0. Doubles as the reference answer
// for every query kind and as the front half of index construction.
struct DfsResult {
  Vertex n = 0;
  Vertex source = 0;                      // 0 for forests
  std::vector<Vertex> roots;              // tree roots in start order
  std::vector<Vertex> parent;             // per vertex; 0 = none
  std::vector<uint32_t> dfi;              // per vertex; 0 = unreached
  std::vector<Vertex> order;              // order[i-1] = vertex with dfi i
  std::vector<std::vector<Vertex>> children;  // visit order = adjacency order
  std::vector<uint32_t> subtree_size;     // reached vertices only
  std::vector<uint32_t> depth;            // root depth 0
  // Slot of the child in the parent's (out-)adjacency array, and slot of the
  // parent in the child's (in-)adjacency array, per tree edge keyed by child.
  std::vector<uint32_t> child_slot_in_parent;
  std::vector<uint32_t> parent_slot_in_child;

  uint32_t reached() const { return uint32_t(order.size()); }
  bool is_reached(Vertex v) const { return dfi[v] != 0; }
  void check_reached(Vertex v) const {
    if (v == 0 || v > n) throw std::out_of_range("vertex id out of range");
    if (!is_reached(v)) throw std::domain_error("vertex not reached by the traversal");
  }

  // Proper-ancestor test via the DFI interval of u's subtree.
  bool is_ancestor(Vertex u, Vertex v) const {
    check_reached(u);
    check_reached(v);
    return u != v && dfi[u] <= dfi[v] && dfi[v] < dfi[u] + subtree_size[u];
  }
  Vertex vertex_at_dfi(uint32_t i) const {
    if (i == 0 || i > order.size()) throw std::out_of_range("dfi out of range");
    return order[i - 1];
  }
  Vertex first_visited(Vertex u, Vertex v) const {
    check_reached(u);
    check_reached(v);
    return dfi[u] <= dfi[v] ? u : v;
  }
  uint32_t subtree(Vertex v) const {
    check_reached(v);
    return subtree_size[v];
  }
};

// Single-source lex-DFS using an explicit stack and per-vertex adjacency
// cursors (no recursion, so 2^20-vertex inputs are fine).
DfsResult lex_dfs(const AdjacencyGraph& g, Vertex source);

// Forest: restart at the given roots order (every vertex must appear in
// `starts` or be reachable from an earlier start).
DfsResult lex_dfs_forest(const AdjacencyGraph& g, const std::vector<Vertex>& starts);

// Same, but traverses reversed arcs (in-neighbor arrays) of a directed graph.
// Child slots refer to in-adjacency, parent slots to out-adjacency.
DfsResult lex_dfs_forest_reversed(const AdjacencyGraph& g, const std::vector<Vertex>& starts);

// Vertices in decreasing finish time of a full lex-DFS forest over ascending
// vertex ids; the classic first pass of two-pass SCC.
std::vector<Vertex> finish_order_descending(const AdjacencyGraph& g);

}  // namespace dfsidx
