#pragma once

#include <cstdint>
#include <vector>

#include "dfsidx/bitvec.hpp"
#include "dfsidx/graph.hpp"
#include "dfsidx/lexdfs.hpp"

namespace dfsidx {

// Permutation with sampled back-pointers: pi(i) is one array read, the
// inverse walks forward along the cycle from the nearest shortcut and never
// needs more than step_limit()+1 reads of the forward array.
class ShortcutPermutation {
 public:
  ShortcutPermutation() = default;
  // pi: 1-based bijection on [1, n]; epsilon in (0, 1].
  ShortcutPermutation(const std::vector<uint32_t>& pi, double epsilon);

  uint32_t size() const { return n_; }
  uint32_t step_limit() const { return t_; }

  uint32_t apply(uint32_t i) const {
    check(i);
    return uint32_t(forward_.get(i - 1));
  }
  uint32_t inverse(uint32_t j) const {
    uint32_t reads = 0;
    return inverse_counted(j, reads);
  }
  // Also reports the number of forward-array reads performed.
  uint32_t inverse_counted(uint32_t j, uint32_t& reads) const;

  uint64_t total_bits() const;
  void serialize(ByteWriter& w) const;
  static ShortcutPermutation deserialize(ByteReader& r);

 private:
  void check(uint32_t i) const {
    if (i == 0 || i > n_) throw std::out_of_range("permutation argument out of range");
  }
  uint32_t n_ = 0;
  uint32_t t_ = 1;
  FixedWidthArray forward_;
  PlainBitvector marks_;
  FixedWidthArray shortcuts_;
};

// Ordered tree as a balanced-parentheses sequence with an excess-search
// directory (one-word blocks aggregated in a min tree). Nodes are addressed
// by preorder rank, 1-based.
class SuccinctOrderedTree {
 public:
  SuccinctOrderedTree() = default;
  explicit SuccinctOrderedTree(const DfsResult& tree);

  uint32_t num_nodes() const { return n_; }
  std::string parens_string() const;

  uint32_t depth(uint32_t pre) const;
  uint32_t degree(uint32_t pre) const;
  uint32_t child(uint32_t pre, uint32_t i) const;      // preorder rank of i-th child
  uint32_t parent(uint32_t pre) const;                 // 0 for the root
  uint32_t level_anc(uint32_t pre, uint32_t level) const;

  uint64_t total_bits() const;
  void serialize(ByteWriter& w) const;
  static SuccinctOrderedTree deserialize(ByteReader& r);

 private:
  void check(uint32_t pre) const {
    if (pre == 0 || pre > n_) throw std::out_of_range("tree node out of range");
  }
  int64_t excess(uint64_t i) const {  // prefix excess after position i (1-based)
    return 2 * int64_t(bp_.rank1(i)) - int64_t(i);
  }
  uint64_t open_pos(uint32_t pre) const { return bp_.select1(pre); }
  uint64_t close_pos(uint64_t open) const;  // matching close paren
  uint64_t fwd_search(uint64_t pos, int64_t target) const;
  uint64_t bwd_search(uint64_t pos, int64_t target) const;
  // Occurrences of value `target` (= the range minimum) of the prefix excess
  // within [l, r].
  uint64_t min_count(uint64_t l, uint64_t r, int64_t target) const;
  uint64_t min_select(uint64_t l, uint64_t r, int64_t target, uint64_t k) const;
  void build_minmax();
  std::pair<int32_t, uint32_t> seg(uint32_t node) const {
    return {seg_min_[node], seg_cnt_[node]};
  }

  uint32_t n_ = 0;
  PlainBitvector bp_;
  // Segment tree over 64-bit blocks: minimum prefix excess per segment and
  // the number of positions attaining it.
  uint32_t n_blocks_ = 0;
  uint32_t seg_base_ = 1;
  std::vector<int32_t> seg_min_;
  std::vector<uint32_t> seg_cnt_;
};

// The encoding-model index: the DFI permutation plus the succinct DFS tree.
// Answers every query kind without the graph. Vertices outside the traversal
// are rejected; internally vertices are compacted through a reached map.
class EncIndex {
 public:
  EncIndex() = default;
  static EncIndex build(const AdjacencyGraph& g, Vertex source, double epsilon);

  Vertex n() const { return n_; }
  Vertex source() const { return source_; }
  double epsilon() const { return epsilon_; }
  uint32_t reached_count() const { return perm_.size(); }
  bool is_reached(Vertex v) const { return v >= 1 && v <= n_ && reached_.bit(v); }

  uint32_t dfi(Vertex v) const { return perm_.apply(compact(v)); }
  Vertex vertex_at_dfi(uint32_t i) const;
  Vertex first_visited(Vertex u, Vertex v) const { return dfi(u) <= dfi(v) ? u : v; }
  bool is_ancestor(Vertex u, Vertex v) const;
  Vertex parent(Vertex v) const;  // 0 for the source
  uint32_t num_children(Vertex v) const { return tree_.degree(dfi(v)); }
  std::vector<Vertex> children(Vertex v) const;
  std::vector<Vertex> preorder() const;

  const ShortcutPermutation& perm() const { return perm_; }
  const SuccinctOrderedTree& tree() const { return tree_; }
  uint64_t total_bits() const;

  void serialize(ByteWriter& w) const;
  static EncIndex deserialize(ByteReader& r);

 private:
  uint32_t compact(Vertex v) const {
    if (v == 0 || v > n_) throw std::out_of_range("vertex id out of range");
    if (!reached_.bit(v)) throw std::domain_error("vertex not covered by the traversal");
    return uint32_t(reached_.rank1(v));
  }
  Vertex expand(uint32_t idx) const { return Vertex(reached_.select1(idx)); }

  Vertex n_ = 0;
  Vertex source_ = 0;
  double epsilon_ = 0.25;
  PlainBitvector reached_;
  ShortcutPermutation perm_;
  SuccinctOrderedTree tree_;
};

}  // namespace dfsidx
