#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dfsidx/bitvec.hpp"
#include "dfsidx/graph.hpp"
#include "dfsidx/lexdfs.hpp"
#include "dfsidx/treecover.hpp"

namespace dfsidx {

enum class BuildMode : uint8_t { Auto = 0, Plain = 1, Compressed = 2 };

// Which adjacency array of the graph a tree direction lives in. A reversed
// traversal (second SCC pass) finds children in the in-arrays and parents in
// the out-arrays.
enum class AdjSide : uint8_t { Out = 0, In = 1 };

// Unary-degree-sequence encoding of one rooted forest over a graph:
//   D  - per vertex, a 1 followed by one 0 per adjacency slot
//   E  - marks, in the parent's D-block, the slot of each tree child
//   P  - marks, in the child's D-block, the slot of its parent
//   DT - unary tree-degree sequence (n ones, reached-1 zeros)
// plus reached/root bitvectors. All positions 1-based. In compressed mode
// D/E/P become sparse and are probed with select1 only.
class TreeBits {
 public:
  TreeBits() = default;
  TreeBits(const AdjacencyGraph& g, const DfsResult& t, AdjSide child_side, AdjSide parent_side,
           bool compressed);

  Vertex n() const { return n_; }
  uint32_t reached_count() const { return reached_count_; }
  bool is_reached(Vertex v) const { return reached_.bit(v); }
  bool is_root(Vertex v) const { return roots_.bit(v); }
  void check_reached(Vertex v) const {
    if (v == 0 || v > n_) throw std::out_of_range("vertex id out of range");
    if (!single_full_root_ && !reached_.bit(v))
      throw std::domain_error("vertex not covered by the traversal");
  }

  // 0 when v is a forest root.
  Vertex parent(const AdjacencyGraph& g, Vertex v) const;
  // Parent plus the 1-based slot of the parent inside v's parent-side array.
  std::pair<Vertex, uint32_t> parent_with_slot(const AdjacencyGraph& g, Vertex v) const;
  uint32_t num_children(Vertex v) const;
  Vertex child_at(const AdjacencyGraph& g, Vertex v, uint32_t j) const;  // j-th tree child
  std::vector<Vertex> children(const AdjacencyGraph& g, Vertex v) const;

  const BitvecAny& D_child() const { return d_child_; }
  const BitvecAny& E_child() const { return e_child_; }
  const BitvecAny& D_parent() const { return same_d_ ? d_child_ : d_parent_; }
  const BitvecAny& P() const { return p_; }
  const PlainBitvector& D_T() const { return dt_; }
  const PlainBitvector& reached() const { return reached_; }
  const PlainBitvector& roots() const { return roots_; }
  bool compressed() const { return compressed_; }
  bool shares_d() const { return same_d_; }
  AdjSide child_side() const { return child_side_; }
  AdjSide parent_side() const { return parent_side_; }

  // 1-based index of the one of P that belongs to vertex v's block.
  uint64_t parent_mark_rank(Vertex v) const {
    if (single_full_root_) return v > single_full_root_ ? v - 1 : v;
    return reached_.rank1(v) - roots_.rank1(v);
  }

  void serialize(ByteWriter& w) const;
  static TreeBits deserialize(ByteReader& r);

  // Component-wise serialization for the sectioned index file layout.
  void serialize_meta(ByteWriter& w) const;
  void serialize_d(ByteWriter& w) const;
  void serialize_e(ByteWriter& w) const;
  void serialize_p(ByteWriter& w) const;
  void serialize_dt(ByteWriter& w) const;
  static TreeBits from_sections(ByteReader& meta, ByteReader& d, ByteReader& e, ByteReader& p,
                                ByteReader& dt);

 private:
  Vertex n_ = 0;
  uint32_t reached_count_ = 0;
  bool compressed_ = false;
  bool same_d_ = true;
  // Set when the traversal covers every vertex from a single root; the
  // parent-mark rank then reduces to v minus one past the root.
  Vertex single_full_root_ = 0;
  AdjSide child_side_ = AdjSide::Out;
  AdjSide parent_side_ = AdjSide::Out;
  BitvecAny d_child_, e_child_, d_parent_, p_;
  PlainBitvector dt_, reached_, roots_;
};

// Unpacked view of one C-array entry.
struct MinitreeRecord {
  Vertex root = 0;
  uint32_t first_child_slot = 0;  // adjacency slot in the root's array; 0 = lone root
  uint32_t first_child_dfi = 0;
  Vertex out_c = 0, out_d = 0;
  uint32_t out_subtree_size = 0;
  uint32_t root_tree_depth = 0;
};

// Everything produced by the covering step: root/last-child/out-edge marks,
// the packed record array, per-root DFI and subtree size, the skeleton with
// its left-to-right minitree pointers, level ancestor, and the DFI interval
// table. `lean` builds keep only the root marks and drop reconstruction
// support (enough for the climb-to-root applications).
class CoverIndex {
 public:
  CoverIndex() = default;
  CoverIndex(const AdjacencyGraph& g, const DfsResult& tree, const TreeBits& bits, uint32_t L,
             bool lean);
  // Cover over `cover_tree` (which may extend `tree` by a virtual super-root
  // at vertex n+1) while bit-level structures describe `tree`.
  CoverIndex(const AdjacencyGraph& g, const DfsResult& tree, const DfsResult& cover_tree,
             const TreeBits& bits, uint32_t L, bool lean);

  uint32_t L() const { return L_; }
  bool lean() const { return lean_; }
  uint32_t num_minitree_roots() const { return uint32_t(f_dfi_.size()); }
  uint32_t num_records() const { return uint32_t(c_.size() / kRecordFields); }

  bool is_minitree_root(Vertex v) const { return v <= a_.size() && a_.bit(v); }
  uint32_t skel_id(Vertex root) const { return uint32_t(a_.rank1(root)) - 1; }
  Vertex root_of_skel(uint32_t id) const { return Vertex(a_.select1(id + 1)); }
  uint32_t root_dfi(uint32_t skel) const { return uint32_t(f_dfi_.get(skel)); }
  uint32_t root_subtree(uint32_t skel) const { return uint32_t(f_size_.get(skel)); }

  MinitreeRecord record(uint32_t j) const;
  Vertex last_child_of_record(uint32_t j) const { return Vertex(r_.select1(j + 1)); }

  struct Reconstruction {
    uint32_t record_id = 0;
    Vertex root = 0;
    std::vector<Vertex> nodes;      // minitree preorder; nodes[0] = root
    std::vector<uint32_t> dfis;     // ascending
    std::vector<uint32_t> in_size;  // in-minitree subtree size per node
    uint32_t out_c_idx = UINT32_MAX;
    uint32_t jump_after_idx = UINT32_MAX;  // descend to out_d after this index
    uint32_t jump_amount = 0;

    int32_t index_of(Vertex v) const;
    int32_t index_of_dfi(uint32_t d) const;
  };

  // Walks from v to the boundary marks of its minitree and rebuilds the
  // whole minitree with DFIs; v must not be a minitree root. O(L) probes.
  Reconstruction reconstruct_containing(const AdjacencyGraph& g, const TreeBits& bits,
                                        Vertex v) const;
  Reconstruction reconstruct_record(const AdjacencyGraph& g, const TreeBits& bits,
                                    uint32_t record_id) const;
  uint32_t find_record_of(const AdjacencyGraph& g, const TreeBits& bits, Vertex v) const;

  uint32_t dfi(const AdjacencyGraph& g, const TreeBits& bits, Vertex v) const;
  uint32_t subtree_size(const AdjacencyGraph& g, const TreeBits& bits, Vertex v) const;
  Vertex vertex_at_dfi(const AdjacencyGraph& g, const TreeBits& bits, uint32_t i) const;
  std::vector<Vertex> preorder(const AdjacencyGraph& g, const TreeBits& bits, Vertex source) const;

  // First marked minitree root on the parent chain from v (v itself counts),
  // or the forest root if that comes first. Returns (vertex, skel id or
  // UINT32_MAX when the stop was an unmarked forest root).
  std::pair<Vertex, uint32_t> climb_to_cover_root(const AdjacencyGraph& g, const TreeBits& bits,
                                                  Vertex v) const;

  const PlainBitvector& A() const { return a_; }
  const PlainBitvector& R() const { return r_; }
  const PlainBitvector& Z() const { return z_; }
  const PlainBitvector& Lrm() const { return lrm_; }
  const LevelAncestorIndex& la() const { return la_; }

  uint64_t component_bits(const std::string& name) const;
  void serialize(ByteWriter& w) const;
  static CoverIndex deserialize(ByteReader& r);

 private:
  static constexpr uint32_t kRecordFields = 7;
  void build_from_cover(const TreeCover& cover, const Skeleton& skel, const DfsResult& tree,
                        const DfsResult& cover_tree);
  Vertex rm_descend(const AdjacencyGraph& g, const TreeBits& bits, Vertex x) const;
  Vertex next_in_minitree_sibling(const AdjacencyGraph& g, const TreeBits& bits, Vertex x) const;

  uint32_t L_ = 0;
  bool lean_ = true;
  PlainBitvector a_;    // minitree-root marks
  PlainBitvector r_;    // last-root-child marks (lone roots mark themselves)
  PlainBitvector z_;    // out-edge sources
  PlainBitvector lrm_;  // rightmost leaves
  FixedWidthArray c_;   // packed records, kRecordFields per entry
  FixedWidthArray f_dfi_, f_size_;
  FixedWidthArray iv_start_, iv_record_;  // DFI interval table (starts partition [1, reached])
  // Skeleton, packed: parents/depths plus per-node item lists (minitree
  // pointers in left-to-right order interleaved with direct skeleton children).
  FixedWidthArray skel_parent_, skel_depth_, skel_tree_depth_;
  FixedWidthArray item_offset_, item_flat_;
  LevelAncestorIndex la_;
};

struct SpaceReport {
  std::vector<std::pair<std::string, uint64_t>> entries;
  uint64_t total_bits = 0;
  uint64_t value(const std::string& key) const;
  std::string to_text() const;  // key=value lines
};

// The indexing-model structure: build once from a graph and source, then
// answer all query kinds with the index plus the original graph.
class DfsIndex {
 public:
  DfsIndex() = default;
  static DfsIndex build(const AdjacencyGraph& g, Vertex source, BuildMode mode = BuildMode::Auto);

  Vertex source() const { return source_; }
  Vertex n() const { return bits_.n(); }
  uint32_t reached_count() const { return bits_.reached_count(); }
  bool directed() const { return directed_; }
  bool compressed() const { return bits_.compressed(); }
  bool is_reached(Vertex v) const { return v >= 1 && v <= bits_.n() && bits_.is_reached(v); }

  Vertex parent(const AdjacencyGraph& g, Vertex v) const { return bits_.parent(g, v); }
  uint32_t num_children(Vertex v) const { return bits_.num_children(v); }
  std::vector<Vertex> children(const AdjacencyGraph& g, Vertex v) const {
    return bits_.children(g, v);
  }
  uint32_t dfi(const AdjacencyGraph& g, Vertex v) const { return cover_.dfi(g, bits_, v); }
  Vertex first_visited(const AdjacencyGraph& g, Vertex u, Vertex v) const {
    return dfi(g, u) <= dfi(g, v) ? u : v;
  }
  uint32_t subtree_size(const AdjacencyGraph& g, Vertex v) const {
    return cover_.subtree_size(g, bits_, v);
  }
  bool is_ancestor(const AdjacencyGraph& g, Vertex u, Vertex v) const {
    uint32_t du = dfi(g, u), dv = dfi(g, v);
    return u != v && du <= dv && dv < du + subtree_size(g, u);
  }
  std::vector<Vertex> preorder(const AdjacencyGraph& g) const {
    return cover_.preorder(g, bits_, source_);
  }
  Vertex vertex_at_dfi(const AdjacencyGraph& g, uint32_t i) const {
    return cover_.vertex_at_dfi(g, bits_, i);
  }
  CoverIndex::Reconstruction reconstruct_minitree(const AdjacencyGraph& g, Vertex v) const {
    return cover_.reconstruct_containing(g, bits_, v);
  }

  SpaceReport space_report() const;

  const TreeBits& bits() const { return bits_; }
  const CoverIndex& cover() const { return cover_; }

  void serialize(ByteWriter& w) const;
  static DfsIndex deserialize(ByteReader& r);

 private:
  Vertex source_ = 0;
  bool directed_ = false;
  TreeBits bits_;
  CoverIndex cover_;
};

// L used by all builds: ceil(lg n), at least 1.
inline uint32_t default_cover_param(Vertex n) {
  uint32_t L = ceil_log2(n ? n : 1);
  return L < 1 ? 1 : L;
}

}  // namespace dfsidx
