#pragma once

#include <cstdint>
#include <vector>

#include "dfsidx/lexdfs.hpp"
#include "dfsidx/serialize.hpp"

namespace dfsidx {

// One covering subtree. Node sets are pairwise disjoint except that several
// minitrees may share a root vertex. At most one edge leaves a non-root node
// (out_c -> out_d, where out_d is the root of the child minitree below).
struct Minitree {
  Vertex root = 0;
  std::vector<Vertex> nodes;        // includes root
  Vertex first_root_child = 0;      // 0 when the minitree is a lone root
  Vertex last_root_child = 0;
  uint32_t first_root_child_slot = 0;  // adjacency slot in the root's array
  Vertex out_c = 0, out_d = 0;      // 0,0 when no edge leaves
  Vertex rightmost_leaf = 0;        // deepest node on the in-cover right spine
};

struct TreeCover {
  uint32_t L = 0;
  std::vector<Minitree> minitrees;
  // Non-root owner per vertex (-1 for minitree roots and unreached vertices);
  // roots own the list of minitrees sharing them, in left-to-right child order.
  std::vector<int32_t> owner_nonroot;
  std::vector<std::vector<uint32_t>> root_minitrees;
  std::vector<uint8_t> is_root;

  bool vertex_is_root(Vertex v) const { return is_root[v] != 0; }
};

// Greedy bottom-up covering: children hand partial components upward, sibling
// components merge while the running size stays below L, and a component is
// closed (rooted at the current vertex) when it reaches L, when merging would
// give a second out-edge, or at a tree root. Closed roots never travel
// upward, so shared nodes are exactly the shared minitree roots.
TreeCover tc_decompose(const DfsResult& tree, uint32_t L);

// Returns human-readable violations of the cover guarantees; empty means the
// cover is valid. max_count_factor is the envelope on #minitrees * L / n.
std::vector<std::string> tc_validate(const TreeCover& cover, const DfsResult& tree,
                                     uint32_t max_count_factor = 8);

// Tree over the distinct minitree roots, with per-root pointers to the
// minitrees sharing that root (left-to-right) and, interleaved in child
// order, the skeleton children that hang directly below the root rather than
// below some minitree's out-edge.
struct Skeleton {
  static constexpr uint32_t kNone = 0xffffffffu;
  struct Item {
    bool gap;     // true: skeleton child reached directly from the root
    uint32_t id;  // minitree id, or skeleton node id when gap
  };
  std::vector<Vertex> roots;  // ascending vertex id; index = skeleton node id
  std::vector<uint32_t> parent;
  std::vector<std::vector<uint32_t>> children;
  std::vector<uint32_t> skel_depth;
  std::vector<uint32_t> tree_depth;
  std::vector<std::vector<uint32_t>> root_pointers;
  std::vector<std::vector<Item>> items;

  uint32_t size() const { return uint32_t(roots.size()); }
  uint32_t id_of(Vertex root) const;  // binary search over roots
};

Skeleton tc_skeleton_build(const TreeCover& cover, const DfsResult& tree);

// Constant-time level ancestor on the skeleton: jump pointers at power-of-two
// distances plus long-path ladders doubled upward. One jump and one ladder
// lookup per query.
class LevelAncestorIndex {
 public:
  LevelAncestorIndex() = default;
  explicit LevelAncestorIndex(const Skeleton& s);

  // Ancestor of x at skeleton depth `level`; level <= depth(x).
  uint32_t query(uint32_t x, uint32_t level) const;
  uint32_t depth(uint32_t x) const { return depth_[x]; }
  uint64_t total_bits() const;

  void serialize(ByteWriter& w) const;
  static LevelAncestorIndex deserialize(ByteReader& r);

 private:
  std::vector<uint32_t> depth_;
  std::vector<uint32_t> ladder_nodes_;   // all ladders, top-down, concatenated
  std::vector<uint32_t> ladder_offset_;
  std::vector<uint32_t> ladder_of_;      // per node: ladder holding its path
  std::vector<uint32_t> pos_in_ladder_;  // per node: index inside that ladder
  std::vector<uint32_t> jump_flat_;      // per node: ancestors at 1,2,4,... hops
  std::vector<uint32_t> jump_offset_;
};

}  // namespace dfsidx
