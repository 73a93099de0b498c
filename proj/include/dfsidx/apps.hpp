#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dfsidx/dfsindex.hpp"

namespace dfsidx {

using Edge = std::pair<Vertex, Vertex>;

// Shortest-path tree stored with the same machinery as the DFS tree; each
// minitree root additionally carries its distance from the source, so a
// distance query climbs within one minitree summing edge weights read back
// from the adjacency arrays.
class SpIndex {
 public:
  SpIndex() = default;
  static SpIndex build(const AdjacencyGraph& g, Vertex source);

  Vertex source() const { return source_; }
  bool is_reached(Vertex v) const { return v >= 1 && v <= bits_.n() && bits_.is_reached(v); }
  uint64_t dist(const AdjacencyGraph& g, Vertex v) const;
  std::vector<Vertex> path(const AdjacencyGraph& g, Vertex v) const;  // source..v

  void serialize(ByteWriter& w) const;
  static SpIndex deserialize(ByteReader& r);

 private:
  Vertex source_ = 0;
  TreeBits bits_;
  CoverIndex cover_;  // lean: root marks only
  std::vector<uint64_t> root_dist_;
};

// Connectivity over the DFS forest (restarts at ascending vertex ids): each
// minitree root stores the label of its forest tree's root, so two climbs
// answer a connectivity query.
class ConnIndex {
 public:
  ConnIndex() = default;
  static ConnIndex build(const AdjacencyGraph& g);

  bool connected(const AdjacencyGraph& g, Vertex u, Vertex v) const;

  void serialize(ByteWriter& w) const;
  static ConnIndex deserialize(ByteReader& r);

 private:
  Vertex tree_root_label(const AdjacencyGraph& g, Vertex v) const;
  TreeBits bits_;
  CoverIndex cover_;  // lean
  FixedWidthArray label_;
};

// Two-pass strongly connected components: the second-pass forest (reversed
// arcs, decreasing finish time) is stored; its trees are the components. The
// cover runs over that forest extended by a virtual super-root, and each
// minitree root stores the component root containing it.
class SccIndex {
 public:
  SccIndex() = default;
  static SccIndex build(const AdjacencyGraph& g);

  Vertex component_root(const AdjacencyGraph& g, Vertex v) const;
  bool same_component(const AdjacencyGraph& g, Vertex u, Vertex v) const {
    return component_root(g, u) == component_root(g, v);
  }
  std::vector<Vertex> members(const AdjacencyGraph& g, Vertex v) const;
  std::vector<Vertex> component_roots() const;
  uint32_t num_components() const { return uint32_t(bits_.roots().ones()); }

  void serialize(ByteWriter& w) const;
  static SccIndex deserialize(ByteReader& r);

 private:
  TreeBits bits_;     // children in the in-arrays, parents in the out-arrays
  CoverIndex cover_;  // lean, over the virtual-rooted forest
  FixedWidthArray label_;
};

// Cut-vertex marks plus the full DFS index for peeling biconnected
// components out of the tree.
class BiconIndex {
 public:
  BiconIndex() = default;
  static BiconIndex build(const AdjacencyGraph& g);

  bool is_cut(Vertex v) const { return h_.bit(v); }
  std::vector<Vertex> cut_vertices() const;
  std::vector<Edge> component_edges(const AdjacencyGraph& g, Vertex u, Vertex v) const;
  bool same_component(const AdjacencyGraph& g, Edge e1, Edge e2) const;

  const DfsIndex& dfs() const { return idx_; }

  void serialize(ByteWriter& w) const;
  static BiconIndex deserialize(ByteReader& r);

 private:
  DfsIndex idx_;
  PlainBitvector h_;
};

// Bridge marks aligned with the parent-direction slots of the D/E/P layout;
// non-tree edges are never bridges, so one select answers a bridge query.
class TeccIndex {
 public:
  TeccIndex() = default;
  static TeccIndex build(const AdjacencyGraph& g);

  bool is_bridge(const AdjacencyGraph& g, Vertex u, Vertex v) const;
  std::vector<Edge> bridges(const AdjacencyGraph& g) const;
  std::vector<Edge> component_edges(const AdjacencyGraph& g, Vertex u, Vertex v) const;
  bool same_component(const AdjacencyGraph& g, Edge e1, Edge e2) const;

  const DfsIndex& dfs() const { return idx_; }

  void serialize(ByteWriter& w) const;
  static TeccIndex deserialize(ByteReader& r);

 private:
  void check_edge(const AdjacencyGraph& g, Vertex u, Vertex v) const;
  DfsIndex idx_;
  PlainBitvector y_;
};

}  // namespace dfsidx
