#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dfsidx/common.hpp"

namespace dfsidx {

// Labeled graph in adjacency-array form. Neighbor order is preserved exactly
// as ingested; lex-DFS semantics depend on it. Directed graphs carry both
// out- and in-neighbor arrays; for undirected graphs the in-view aliases the
// out arrays. Immutable after parse.
class AdjacencyGraph {
 public:
  AdjacencyGraph() = default;
  AdjacencyGraph(Vertex n, bool directed, bool weighted = false);

  Vertex num_vertices() const { return n_; }
  uint64_t num_edges() const { return m_; }
  bool directed() const { return directed_; }
  bool weighted() const { return weighted_; }

  uint32_t out_degree(Vertex v) const { return uint32_t(out_adj_[v].size()); }
  uint32_t in_degree(Vertex v) const { return uint32_t(in_side(v).size()); }

  // j-th neighbor (1-based slot) of v's out-adjacency array.
  Vertex neighbor(Vertex v, uint32_t j) const {
    check_vertex(v);
    if (j == 0 || j > out_adj_[v].size()) throw std::out_of_range("neighbor slot out of range");
    return out_adj_[v][j - 1];
  }
  Vertex in_neighbor(Vertex v, uint32_t j) const {
    check_vertex(v);
    const auto& a = in_side(v);
    if (j == 0 || j > a.size()) throw std::out_of_range("in-neighbor slot out of range");
    return a[j - 1];
  }
  uint64_t weight_at(Vertex v, uint32_t j) const { return weighted_ ? out_w_[v][j - 1] : 1; }
  uint64_t in_weight_at(Vertex v, uint32_t j) const {
    if (!weighted_) return 1;
    return directed_ ? in_w_[v][j - 1] : out_w_[v][j - 1];
  }

  // 1-based slot of u in v's out-adjacency (in-adjacency) array. Linear scan;
  // build-time use only.
  uint32_t find_out_slot(Vertex v, Vertex u) const;
  uint32_t find_in_slot(Vertex v, Vertex u) const;

  const std::vector<Vertex>& out_neighbors(Vertex v) const { return out_adj_[v]; }
  const std::vector<Vertex>& in_neighbors(Vertex v) const { return in_side(v); }

  // Mutation is build-time only; weights apply to the slot being added.
  void add_arc(Vertex from, Vertex to, uint64_t w = 1);
  void add_in_arc(Vertex at, Vertex from, uint64_t w = 1);
  void set_edge_count(uint64_t m) { m_ = m; }

  // Flattens the adjacency arrays into one contiguous block so hot query
  // paths can index a slot directly from its unary-degree-array position.
  // Called by the parsers and generators; an unfrozen graph still answers
  // every query through the per-vertex arrays.
  void freeze();
  bool frozen() const { return !flat_out_.empty() || m_ == 0; }
  // neighbor(v, j) given base = (position of v's one in D) - v, 0-based slots
  // counted over all vertices before v.
  Vertex neighbor_flat(uint64_t base, uint32_t j) const { return flat_out_[base + j - 1]; }
  Vertex in_neighbor_flat(uint64_t base, uint32_t j) const {
    return directed_ ? flat_in_[base + j - 1] : flat_out_[base + j - 1];
  }

  // Checks the representation invariants; violations are returned, not thrown.
  std::vector<std::string> validate() const;

  std::string serialize_text() const;

  void check_vertex(Vertex v) const {
    if (v == 0 || v > n_) throw std::out_of_range("vertex id out of range");
  }

 private:
  const std::vector<Vertex>& in_side(Vertex v) const {
    return directed_ ? in_adj_[v] : out_adj_[v];
  }

  Vertex n_ = 0;
  uint64_t m_ = 0;
  bool directed_ = false;
  bool weighted_ = false;
  std::vector<std::vector<Vertex>> out_adj_;
  std::vector<std::vector<Vertex>> in_adj_;
  std::vector<std::vector<uint64_t>> out_w_;
  std::vector<std::vector<uint64_t>> in_w_;
  std::vector<Vertex> flat_out_;
  std::vector<Vertex> flat_in_;
};

// Parses the text format:
//   line 1:  n m directed|undirected [weighted]
//   n lines: neighbors of vertex i ("v" or "v:w" when weighted)
//   directed only: a "--" line, then n lines of in-neighbors
// '#' starts a comment line; blank lines inside the adjacency block denote
// isolated vertices. Throws ParseError naming the offending line.
AdjacencyGraph parse_graph(std::istream& in);
AdjacencyGraph parse_graph_text(const std::string& text);
AdjacencyGraph load_graph_file(const std::string& path);

}  // namespace dfsidx
