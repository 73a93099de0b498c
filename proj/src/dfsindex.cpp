#include "dfsidx/dfsindex.hpp"

#include <algorithm>
#include <sstream>

namespace dfsidx {

// ---------------------------------------------------------------------------
// TreeBits

TreeBits::TreeBits(const AdjacencyGraph& g, const DfsResult& t, AdjSide child_side,
                   AdjSide parent_side, bool compressed)
    : n_(g.num_vertices()),
      reached_count_(t.reached()),
      compressed_(compressed),
      same_d_(child_side == parent_side),
      child_side_(child_side),
      parent_side_(parent_side) {
  auto deg = [&](AdjSide side, Vertex v) {
    return side == AdjSide::Out ? g.out_degree(v) : g.in_degree(v);
  };
  // 1-based position of each vertex's 1 in the unary degree array.
  auto offsets = [&](AdjSide side) {
    std::vector<uint64_t> off(size_t(n_) + 2, 0);
    off[1] = 1;
    for (Vertex v = 1; v <= n_; ++v) off[v + 1] = off[v] + 1 + deg(side, v);
    return off;
  };
  std::vector<uint64_t> off_child = offsets(child_side);
  std::vector<uint64_t> off_parent = same_d_ ? off_child : offsets(parent_side);
  uint64_t child_univ = off_child[n_ + 1] - 1;
  uint64_t parent_univ = off_parent[n_ + 1] - 1;

  std::vector<uint64_t> e_pos, p_pos;
  e_pos.reserve(reached_count_);
  p_pos.reserve(reached_count_);
  for (Vertex v = 1; v <= n_; ++v) {
    if (!t.is_reached(v) || t.parent[v] == 0) continue;
    Vertex p = t.parent[v];
    e_pos.push_back(off_child[p] + t.child_slot_in_parent[v]);
    p_pos.push_back(off_parent[v] + t.parent_slot_in_child[v]);
  }
  std::sort(e_pos.begin(), e_pos.end());

  if (compressed) {
    std::vector<uint64_t> d_ones(n_);
    for (Vertex v = 1; v <= n_; ++v) d_ones[v - 1] = off_child[v];
    d_child_ = BitvecAny(SparseBitvector(d_ones, child_univ));
    if (!same_d_) {
      for (Vertex v = 1; v <= n_; ++v) d_ones[v - 1] = off_parent[v];
      d_parent_ = BitvecAny(SparseBitvector(d_ones, parent_univ));
    }
    e_child_ = BitvecAny(SparseBitvector(e_pos, child_univ));
    p_ = BitvecAny(SparseBitvector(p_pos, parent_univ));
  } else {
    auto unary = [&](AdjSide side, uint64_t univ) {
      BitString bs;
      bs.words().reserve(size_t(univ / 64) + 1);
      for (Vertex v = 1; v <= n_; ++v) {
        bs.append(true);
        bs.append_run(false, deg(side, v));
      }
      return bs;
    };
    d_child_ = BitvecAny(PlainBitvector(unary(child_side, child_univ)));
    if (!same_d_) d_parent_ = BitvecAny(PlainBitvector(unary(parent_side, parent_univ)));
    BitString eb(child_univ), pb(parent_univ);
    for (uint64_t q : e_pos) eb.set(q - 1);
    for (uint64_t q : p_pos) pb.set(q - 1);
    e_child_ = BitvecAny(PlainBitvector(std::move(eb)));
    p_ = BitvecAny(PlainBitvector(std::move(pb)));
  }

  BitString dt;
  for (Vertex v = 1; v <= n_; ++v) {
    dt.append(true);
    dt.append_run(false, t.children[v].size());
  }
  dt_ = PlainBitvector(std::move(dt));

  BitString rb(n_), rootb(n_);
  for (Vertex v = 1; v <= n_; ++v)
    if (t.is_reached(v)) rb.set(v - 1);
  for (Vertex r : t.roots) rootb.set(r - 1);
  reached_ = PlainBitvector(std::move(rb));
  roots_ = PlainBitvector(std::move(rootb));
  if (reached_count_ == n_ && t.roots.size() == 1) single_full_root_ = t.roots.front();
}

std::pair<Vertex, uint32_t> TreeBits::parent_with_slot(const AdjacencyGraph& g, Vertex v) const {
  check_reached(v);
  if (single_full_root_ ? v == single_full_root_ : roots_.bit(v)) return {kNoVertex, 0};
  uint64_t k = parent_mark_rank(v);
  uint64_t p = p_.select1(k);
  uint64_t dv = D_parent().select1(v);
  uint32_t j = uint32_t(p - dv);
  Vertex u;
  if (g.frozen())
    u = parent_side_ == AdjSide::In ? g.in_neighbor_flat(dv - v, j) : g.neighbor_flat(dv - v, j);
  else
    u = parent_side_ == AdjSide::In ? g.in_neighbor(v, j) : g.neighbor(v, j);
  return {u, j};
}

Vertex TreeBits::parent(const AdjacencyGraph& g, Vertex v) const {
  return parent_with_slot(g, v).first;
}

uint32_t TreeBits::num_children(Vertex v) const {
  check_reached(v);
  uint64_t a = dt_.select1(v);
  uint64_t b = (v == n_) ? dt_.size() + 1 : dt_.select1(v + 1);
  return uint32_t(b - a - 1);
}

Vertex TreeBits::child_at(const AdjacencyGraph& g, Vertex v, uint32_t j) const {
  uint64_t base = dt_.select1(v) - v;  // tree children of vertices before v
  uint64_t pos = e_child_.select1(base + j);
  uint64_t dv = d_child_.select1(v);
  uint32_t slot = uint32_t(pos - dv);
  if (g.frozen())
    return child_side_ == AdjSide::In ? g.in_neighbor_flat(dv - v, slot)
                                      : g.neighbor_flat(dv - v, slot);
  return child_side_ == AdjSide::In ? g.in_neighbor(v, slot) : g.neighbor(v, slot);
}

std::vector<Vertex> TreeBits::children(const AdjacencyGraph& g, Vertex v) const {
  uint32_t cnt = num_children(v);
  std::vector<Vertex> out;
  out.reserve(cnt);
  for (uint32_t j = 1; j <= cnt; ++j) out.push_back(child_at(g, v, j));
  return out;
}

void TreeBits::serialize_meta(ByteWriter& w) const {
  w.u32(n_);
  w.u32(reached_count_);
  w.u8(compressed_ ? 1 : 0);
  w.u8(same_d_ ? 1 : 0);
  w.u8(uint8_t(child_side_));
  w.u8(uint8_t(parent_side_));
}

void TreeBits::serialize_d(ByteWriter& w) const {
  d_child_.serialize(w);
  if (!same_d_) d_parent_.serialize(w);
}

void TreeBits::serialize_e(ByteWriter& w) const { e_child_.serialize(w); }

void TreeBits::serialize_p(ByteWriter& w) const { p_.serialize(w); }

void TreeBits::serialize_dt(ByteWriter& w) const {
  dt_.serialize(w);
  reached_.serialize(w);
  roots_.serialize(w);
}

void TreeBits::serialize(ByteWriter& w) const {
  serialize_meta(w);
  serialize_d(w);
  serialize_e(w);
  serialize_p(w);
  serialize_dt(w);
}

TreeBits TreeBits::from_sections(ByteReader& meta, ByteReader& d, ByteReader& e, ByteReader& p,
                                 ByteReader& dt) {
  TreeBits b;
  b.n_ = meta.u32();
  b.reached_count_ = meta.u32();
  b.compressed_ = meta.u8() != 0;
  b.same_d_ = meta.u8() != 0;
  b.child_side_ = AdjSide(meta.u8());
  b.parent_side_ = AdjSide(meta.u8());
  b.d_child_ = BitvecAny::deserialize(d);
  if (!b.same_d_) b.d_parent_ = BitvecAny::deserialize(d);
  b.e_child_ = BitvecAny::deserialize(e);
  b.p_ = BitvecAny::deserialize(p);
  b.dt_ = PlainBitvector::deserialize(dt);
  b.reached_ = PlainBitvector::deserialize(dt);
  b.roots_ = PlainBitvector::deserialize(dt);
  if (b.reached_count_ == b.n_ && b.roots_.ones() == 1)
    b.single_full_root_ = Vertex(b.roots_.select1(1));
  return b;
}

TreeBits TreeBits::deserialize(ByteReader& r) { return from_sections(r, r, r, r, r); }

// ---------------------------------------------------------------------------
// CoverIndex

CoverIndex::CoverIndex(const AdjacencyGraph& g, const DfsResult& tree, const TreeBits& bits,
                       uint32_t L, bool lean)
    : CoverIndex(g, tree, tree, bits, L, lean) {}

CoverIndex::CoverIndex(const AdjacencyGraph& g, const DfsResult& tree,
                       const DfsResult& cover_tree, const TreeBits& bits, uint32_t L, bool lean)
    : L_(L), lean_(lean) {
  (void)g;
  (void)bits;
  TreeCover cover = tc_decompose(cover_tree, L);
  Skeleton skel = tc_skeleton_build(cover, cover_tree);
  build_from_cover(cover, skel, tree, cover_tree);
}

void CoverIndex::build_from_cover(const TreeCover& cover, const Skeleton& skel,
                                  const DfsResult& tree, const DfsResult& cover_tree) {
  Vertex n = tree.n;
  uint32_t w = bits_for(uint64_t(n) + 1);

  BitString ab(n);
  for (Vertex r : skel.roots)
    if (r <= n) ab.set(r - 1);
  a_ = PlainBitvector(std::move(ab));

  if (!lean_) {
    // Record order: ascending position of the R mark (last root child, or the
    // root itself for a lone-root minitree).
    std::vector<std::pair<Vertex, uint32_t>> marks;
    marks.reserve(cover.minitrees.size());
    for (uint32_t id = 0; id < cover.minitrees.size(); ++id) {
      const Minitree& m = cover.minitrees[id];
      marks.push_back({m.last_root_child ? m.last_root_child : m.root, id});
    }
    std::sort(marks.begin(), marks.end());
    std::vector<uint32_t> record_of(cover.minitrees.size());
    BitString rb(n), zb(n), lb(n);
    c_ = FixedWidthArray(marks.size() * kRecordFields, w);
    for (uint32_t j = 0; j < marks.size(); ++j) {
      uint32_t id = marks[j].second;
      record_of[id] = j;
      const Minitree& m = cover.minitrees[id];
      rb.set(marks[j].first - 1);
      if (m.out_c) zb.set(m.out_c - 1);
      lb.set(m.rightmost_leaf - 1);
      c_.set(uint64_t(j) * kRecordFields + 0, m.root);
      c_.set(uint64_t(j) * kRecordFields + 1, m.first_root_child_slot);
      c_.set(uint64_t(j) * kRecordFields + 2, m.first_root_child ? tree.dfi[m.first_root_child] : 0);
      c_.set(uint64_t(j) * kRecordFields + 3, m.out_c);
      c_.set(uint64_t(j) * kRecordFields + 4, m.out_d);
      c_.set(uint64_t(j) * kRecordFields + 5, m.out_c ? tree.subtree_size[m.out_c] : 0);
      c_.set(uint64_t(j) * kRecordFields + 6, tree.depth[m.root]);
    }
    r_ = PlainBitvector(std::move(rb));
    z_ = PlainBitvector(std::move(zb));
    lrm_ = PlainBitvector(std::move(lb));

    uint32_t k = uint32_t(skel.roots.size());
    f_dfi_ = FixedWidthArray(k, w);
    f_size_ = FixedWidthArray(k, w);
    for (uint32_t i = 0; i < k; ++i) {
      f_dfi_.set(i, tree.dfi[skel.roots[i]]);
      f_size_.set(i, tree.subtree_size[skel.roots[i]]);
    }

    // DFI intervals. Each minitree spans the subtrees of its root-child run
    // minus the subtree hanging below its out-edge; the shared root's own DFI
    // goes to the leftmost minitree at that root.
    struct Iv {
      uint32_t start, end, rec;
    };
    std::vector<Iv> ivs;
    for (uint32_t id = 0; id < cover.minitrees.size(); ++id) {
      const Minitree& m = cover.minitrees[id];
      uint32_t rec = record_of[id];
      std::vector<std::pair<uint32_t, uint32_t>> spans;
      if (m.first_root_child) {
        uint32_t s = tree.dfi[m.first_root_child];
        uint32_t e = tree.dfi[m.rightmost_leaf];
        if (m.out_c) {
          uint32_t hs = tree.dfi[m.out_d];
          uint32_t he = hs + tree.subtree_size[m.out_d] - 1;
          spans.push_back({s, hs - 1});
          if (he < e) spans.push_back({he + 1, e});
        } else {
          spans.push_back({s, e});
        }
      }
      bool leftmost = cover.root_minitrees[m.root].front() == id;
      if (leftmost) {
        uint32_t rd = tree.dfi[m.root];
        if (!spans.empty() && spans.front().first == rd + 1)
          spans.front().first = rd;
        else
          spans.insert(spans.begin(), {rd, rd});
      }
      for (auto [s, e] : spans) ivs.push_back({s, e, rec});
    }
    std::sort(ivs.begin(), ivs.end(), [](const Iv& a, const Iv& b) { return a.start < b.start; });
    uint32_t expect = 1;
    for (const Iv& iv : ivs) {
      if (iv.start != expect)
        throw std::logic_error("cover interval table does not partition the DFI range");
      expect = iv.end + 1;
    }
    if (expect != tree.reached() + 1)
      throw std::logic_error("cover interval table does not cover the DFI range");
    iv_start_ = FixedWidthArray(ivs.size(), w);
    iv_record_ = FixedWidthArray(ivs.size(), bits_for(marks.size() ? marks.size() : 1));
    for (size_t i = 0; i < ivs.size(); ++i) {
      iv_start_.set(i, ivs[i].start);
      iv_record_.set(i, ivs[i].rec);
    }

    // Packed skeleton and level ancestor (cover_tree == tree on this path).
    (void)cover_tree;
    uint32_t ws = bits_for(k + 1);
    skel_parent_ = FixedWidthArray(k, ws);
    skel_depth_ = FixedWidthArray(k, w);
    skel_tree_depth_ = FixedWidthArray(k, w);
    uint64_t total_items = 0;
    for (uint32_t i = 0; i < k; ++i) total_items += skel.items[i].size();
    item_offset_ = FixedWidthArray(k + 1, bits_for(total_items + 1));
    uint32_t wi = bits_for(std::max<uint64_t>(marks.size(), k) + 1) + 1;
    item_flat_ = FixedWidthArray(total_items, wi);
    uint64_t at = 0;
    for (uint32_t i = 0; i < k; ++i) {
      skel_parent_.set(i, skel.parent[i] == Skeleton::kNone ? 0 : skel.parent[i] + 1);
      skel_depth_.set(i, skel.skel_depth[i]);
      skel_tree_depth_.set(i, skel.tree_depth[i]);
      item_offset_.set(i, at);
      for (const Skeleton::Item& it : skel.items[i]) {
        uint64_t id = it.gap ? it.id : record_of[it.id];
        item_flat_.set(at++, (id << 1) | (it.gap ? 1 : 0));
      }
    }
    item_offset_.set(k, at);
    la_ = LevelAncestorIndex(skel);
  }
}

MinitreeRecord CoverIndex::record(uint32_t j) const {
  MinitreeRecord rec;
  uint64_t b = uint64_t(j) * kRecordFields;
  rec.root = Vertex(c_.get(b + 0));
  rec.first_child_slot = uint32_t(c_.get(b + 1));
  rec.first_child_dfi = uint32_t(c_.get(b + 2));
  rec.out_c = Vertex(c_.get(b + 3));
  rec.out_d = Vertex(c_.get(b + 4));
  rec.out_subtree_size = uint32_t(c_.get(b + 5));
  rec.root_tree_depth = uint32_t(c_.get(b + 6));
  return rec;
}

int32_t CoverIndex::Reconstruction::index_of(Vertex v) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == v) return int32_t(i);
  return -1;
}

int32_t CoverIndex::Reconstruction::index_of_dfi(uint32_t d) const {
  auto it = std::lower_bound(dfis.begin(), dfis.end(), d);
  if (it == dfis.end() || *it != d) return -1;
  return int32_t(it - dfis.begin());
}

// Deepest node reachable from x by repeatedly taking the last child that
// stays inside x's minitree (children leading to other minitree roots are
// skipped; there is at most one such child below a non-root node).
Vertex CoverIndex::rm_descend(const AdjacencyGraph& g, const TreeBits& bits, Vertex x) const {
  for (;;) {
    uint32_t cnt = bits.num_children(x);
    Vertex next = kNoVertex;
    // At most one child leads out of the minitree (the out-edge target, a
    // marked root), so this scan inspects at most two children.
    for (uint32_t j = cnt; j >= 1; --j) {
      Vertex c = bits.child_at(g, x, j);
      if (!a_.bit(c)) {
        next = c;
        break;
      }
    }
    if (next == kNoVertex) return x;
    x = next;
  }
}

// Next sibling of x (inside the same minitree) in its parent's child order,
// or 0 when x is its parent's last in-cover child. Locating x among its
// parent's children scans the parent's adjacency array once.
Vertex CoverIndex::next_in_minitree_sibling(const AdjacencyGraph& g, const TreeBits& bits,
                                            Vertex x) const {
  Vertex p = bits.parent(g, x);
  if (p == kNoVertex) return kNoVertex;
  uint32_t slot_x = bits.child_side() == AdjSide::In ? g.find_in_slot(p, x)
                                                     : g.find_out_slot(p, x);
  uint64_t base = bits.D_T().select1(p) - p;
  uint64_t idx = bits.E_child().rank1(bits.D_child().select1(p) + slot_x) - base;
  uint32_t cnt = bits.num_children(p);
  for (uint32_t j = uint32_t(idx) + 1; j <= cnt; ++j) {
    Vertex s = bits.child_at(g, p, j);
    if (!a_.bit(s)) return s;
  }
  return kNoVertex;
}

uint32_t CoverIndex::find_record_of(const AdjacencyGraph& g, const TreeBits& bits,
                                    Vertex v) const {
  if (lean_) throw std::logic_error("reconstruction not available on a lean cover");
  if (a_.bit(v)) throw std::invalid_argument("reconstruct: vertex is a minitree root");
  Vertex x = rm_descend(g, bits, v);
  for (;;) {
    if (r_.bit(x)) return uint32_t(r_.rank1(x)) - 1;
    if (lrm_.bit(x)) {
      while (!r_.bit(x)) x = bits.parent(g, x);
      return uint32_t(r_.rank1(x)) - 1;
    }
    for (;;) {
      Vertex s = next_in_minitree_sibling(g, bits, x);
      if (s != kNoVertex) {
        x = rm_descend(g, bits, s);
        break;
      }
      x = bits.parent(g, x);
      if (r_.bit(x)) return uint32_t(r_.rank1(x)) - 1;
    }
  }
}

CoverIndex::Reconstruction CoverIndex::reconstruct_record(const AdjacencyGraph& g,
                                                          const TreeBits& bits,
                                                          uint32_t record_id) const {
  if (lean_) throw std::logic_error("reconstruction not available on a lean cover");
  MinitreeRecord rec = record(record_id);
  Reconstruction out;
  out.record_id = record_id;
  out.root = rec.root;
  out.nodes.push_back(rec.root);
  out.dfis.push_back(root_dfi(skel_id(rec.root)));
  std::vector<int32_t> parent_idx{-1};
  if (rec.first_child_slot == 0) {
    out.in_size.assign(1, 1);
    return out;
  }

  // Starting child index of the root-child run, from the stored adjacency
  // slot (child slots are increasing in the child index).
  uint32_t cnt = bits.num_children(rec.root);
  uint64_t base = bits.D_T().select1(rec.root) - rec.root;
  uint64_t droot = bits.D_child().select1(rec.root);
  uint32_t lo = 1, hi = cnt;
  while (lo < hi) {
    uint32_t mid = (lo + hi) / 2;
    uint64_t slot = bits.E_child().select1(base + mid) - droot;
    if (slot < rec.first_child_slot)
      lo = mid + 1;
    else
      hi = mid;
  }
  uint32_t t0 = lo;
  Vertex vk = last_child_of_record(record_id);

  // Pass 1: topology in minitree preorder. Frames carry the child cursor.
  struct Frame {
    Vertex node;
    uint32_t next_child;
    uint32_t cnt;
    int32_t idx;
  };
  std::vector<Frame> stack;
  for (uint32_t t = t0; t <= cnt; ++t) {
    Vertex c = bits.child_at(g, rec.root, t);
    out.nodes.push_back(c);
    parent_idx.push_back(0);
    stack.push_back({c, 1, bits.num_children(c), int32_t(out.nodes.size()) - 1});
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next_child > f.cnt) {
        stack.pop_back();
        continue;
      }
      Vertex ch = bits.child_at(g, f.node, f.next_child++);
      if (a_.bit(ch)) {
        // The out-edge target; everything below it belongs to other
        // minitrees. Note where the DFI counter must jump.
        out.out_c_idx = uint32_t(f.idx);
        out.jump_after_idx = uint32_t(out.nodes.size()) - 1;
        continue;
      }
      out.nodes.push_back(ch);
      parent_idx.push_back(f.idx);
      stack.push_back({ch, 1, bits.num_children(ch), int32_t(out.nodes.size()) - 1});
    }
    if (c == vk) break;
  }

  // In-minitree subtree sizes, then DFIs with the jump past the out-subtree.
  out.in_size.assign(out.nodes.size(), 1);
  for (size_t i = out.nodes.size(); i-- > 1;) out.in_size[size_t(parent_idx[i])] += out.in_size[i];
  if (out.out_c_idx != UINT32_MAX)
    out.jump_amount = rec.out_subtree_size - out.in_size[out.out_c_idx];
  out.dfis.resize(out.nodes.size());
  out.dfis[0] = root_dfi(skel_id(rec.root));
  uint32_t counter = rec.first_child_dfi;
  for (size_t i = 1; i < out.nodes.size(); ++i) {
    out.dfis[i] = counter++;
    if (i == out.jump_after_idx) counter += out.jump_amount;
  }
  return out;
}

CoverIndex::Reconstruction CoverIndex::reconstruct_containing(const AdjacencyGraph& g,
                                                              const TreeBits& bits,
                                                              Vertex v) const {
  bits.check_reached(v);
  return reconstruct_record(g, bits, find_record_of(g, bits, v));
}

uint32_t CoverIndex::dfi(const AdjacencyGraph& g, const TreeBits& bits, Vertex v) const {
  bits.check_reached(v);
  if (a_.bit(v)) return root_dfi(skel_id(v));
  Reconstruction rec = reconstruct_containing(g, bits, v);
  int32_t i = rec.index_of(v);
  if (i < 0) throw std::logic_error("reconstruction lost the query vertex");
  return rec.dfis[size_t(i)];
}

uint32_t CoverIndex::subtree_size(const AdjacencyGraph& g, const TreeBits& bits, Vertex v) const {
  bits.check_reached(v);
  if (a_.bit(v)) return root_subtree(skel_id(v));
  Reconstruction rec = reconstruct_containing(g, bits, v);
  int32_t i = rec.index_of(v);
  if (i < 0) throw std::logic_error("reconstruction lost the query vertex");
  uint32_t size = rec.in_size[size_t(i)];
  if (rec.out_c_idx != UINT32_MAX && rec.out_c_idx >= uint32_t(i) &&
      rec.out_c_idx < uint32_t(i) + rec.in_size[size_t(i)])
    size += rec.jump_amount;
  return size;
}

Vertex CoverIndex::vertex_at_dfi(const AdjacencyGraph& g, const TreeBits& bits, uint32_t i) const {
  if (lean_) throw std::logic_error("dfi queries not available on a lean cover");
  if (i == 0 || i > bits.reached_count()) throw std::out_of_range("dfi out of range");
  // Largest interval start <= i.
  uint64_t lo = 0, hi = iv_start_.size() - 1;
  while (lo < hi) {
    uint64_t mid = (lo + hi + 1) / 2;
    if (iv_start_.get(mid) <= i)
      lo = mid;
    else
      hi = mid - 1;
  }
  Reconstruction rec = reconstruct_record(g, bits, uint32_t(iv_record_.get(lo)));
  int32_t idx = rec.index_of_dfi(i);
  if (idx < 0) throw std::logic_error("interval table inconsistent with reconstruction");
  return rec.nodes[size_t(idx)];
}

std::vector<Vertex> CoverIndex::preorder(const AdjacencyGraph& g, const TreeBits& bits,
                                         Vertex source) const {
  if (lean_) throw std::logic_error("preorder not available on a lean cover");
  std::vector<Vertex> out;
  out.reserve(bits.reached_count());

  struct Frame {
    bool minitree;
    uint32_t id;         // skeleton node or record id
    uint32_t cursor;     // item index or node index
    Reconstruction rec;  // populated for minitree frames
  };
  std::vector<Frame> stack;
  out.push_back(source);
  stack.push_back({false, skel_id(source), 0, {}});
  while (!stack.empty()) {
    if (!stack.back().minitree) {
      uint32_t sk = stack.back().id;
      uint64_t begin = item_offset_.get(sk), end = item_offset_.get(uint64_t(sk) + 1);
      uint32_t cur = stack.back().cursor;
      if (begin + cur >= end) {
        stack.pop_back();
        continue;
      }
      stack.back().cursor = cur + 1;
      uint64_t packed = item_flat_.get(begin + cur);
      uint32_t id = uint32_t(packed >> 1);
      if (packed & 1) {  // skeleton child hanging directly below this root
        out.push_back(root_of_skel(id));
        stack.push_back({false, id, 0, {}});
      } else {
        stack.push_back({true, id, 1, reconstruct_record(g, bits, id)});
      }
      continue;
    }
    // Minitree frame: the shared root was emitted by its skeleton frame, so
    // start at index 1; descend through the out-edge right after the node
    // preceding the DFI jump.
    Frame& f = stack.back();
    if (f.cursor >= f.rec.nodes.size()) {
      stack.pop_back();
      continue;
    }
    out.push_back(f.rec.nodes[f.cursor]);
    bool at_jump = f.rec.out_c_idx != UINT32_MAX && f.cursor == f.rec.jump_after_idx;
    ++f.cursor;
    if (at_jump) {
      Vertex d = record(f.rec.record_id).out_d;
      uint32_t sk = skel_id(d);
      out.push_back(d);
      stack.push_back({false, sk, 0, {}});  // invalidates f; loop re-fetches
    }
  }
  return out;
}

std::pair<Vertex, uint32_t> CoverIndex::climb_to_cover_root(const AdjacencyGraph& g,
                                                            const TreeBits& bits,
                                                            Vertex v) const {
  bits.check_reached(v);
  Vertex x = v;
  for (;;) {
    if (a_.bit(x)) return {x, skel_id(x)};
    if (bits.is_root(x)) return {x, UINT32_MAX};
    x = bits.parent(g, x);
  }
}

uint64_t CoverIndex::component_bits(const std::string& name) const {
  auto plain = [](const PlainBitvector& bv) { return bv.total_bits(); };
  if (name == "A") return plain(a_);
  if (name == "R") return plain(r_);
  if (name == "Z") return plain(z_);
  if (name == "Lrm") return plain(lrm_);
  if (name == "C") return c_.total_bits();
  if (name == "F") return f_dfi_.total_bits() + f_size_.total_bits();
  if (name == "intervals") return iv_start_.total_bits() + iv_record_.total_bits();
  if (name == "skeleton")
    return skel_parent_.total_bits() + skel_depth_.total_bits() + skel_tree_depth_.total_bits() +
           item_offset_.total_bits() + item_flat_.total_bits();
  if (name == "la") return la_.total_bits();
  return 0;
}

void CoverIndex::serialize(ByteWriter& w) const {
  w.u32(L_);
  w.u8(lean_ ? 1 : 0);
  a_.serialize(w);
  if (lean_) return;
  r_.serialize(w);
  z_.serialize(w);
  lrm_.serialize(w);
  c_.serialize(w);
  f_dfi_.serialize(w);
  f_size_.serialize(w);
  iv_start_.serialize(w);
  iv_record_.serialize(w);
  skel_parent_.serialize(w);
  skel_depth_.serialize(w);
  skel_tree_depth_.serialize(w);
  item_offset_.serialize(w);
  item_flat_.serialize(w);
  la_.serialize(w);
}

CoverIndex CoverIndex::deserialize(ByteReader& r) {
  CoverIndex c;
  c.L_ = r.u32();
  c.lean_ = r.u8() != 0;
  c.a_ = PlainBitvector::deserialize(r);
  if (c.lean_) return c;
  c.r_ = PlainBitvector::deserialize(r);
  c.z_ = PlainBitvector::deserialize(r);
  c.lrm_ = PlainBitvector::deserialize(r);
  c.c_ = FixedWidthArray::deserialize(r);
  c.f_dfi_ = FixedWidthArray::deserialize(r);
  c.f_size_ = FixedWidthArray::deserialize(r);
  c.iv_start_ = FixedWidthArray::deserialize(r);
  c.iv_record_ = FixedWidthArray::deserialize(r);
  c.skel_parent_ = FixedWidthArray::deserialize(r);
  c.skel_depth_ = FixedWidthArray::deserialize(r);
  c.skel_tree_depth_ = FixedWidthArray::deserialize(r);
  c.item_offset_ = FixedWidthArray::deserialize(r);
  c.item_flat_ = FixedWidthArray::deserialize(r);
  c.la_ = LevelAncestorIndex::deserialize(r);
  return c;
}

// ---------------------------------------------------------------------------
// DfsIndex

DfsIndex DfsIndex::build(const AdjacencyGraph& g, Vertex source, BuildMode mode) {
  g.check_vertex(source);
  DfsIndex idx;
  idx.source_ = source;
  idx.directed_ = g.directed();
  DfsResult t = lex_dfs(g, source);
  bool compressed =
      mode == BuildMode::Compressed || (mode == BuildMode::Auto && g.num_edges() > 4 * uint64_t(g.num_vertices()));
  idx.bits_ = TreeBits(g, t, AdjSide::Out, g.directed() ? AdjSide::In : AdjSide::Out, compressed);
  idx.cover_ = CoverIndex(g, t, idx.bits_, default_cover_param(g.num_vertices()), false);
  return idx;
}

uint64_t SpaceReport::value(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return v;
  return 0;
}

std::string SpaceReport::to_text() const {
  std::ostringstream os;
  for (const auto& [k, v] : entries) os << k << '=' << v << '\n';
  os << "total_bits=" << total_bits << '\n';
  return os.str();
}

SpaceReport DfsIndex::space_report() const {
  SpaceReport rep;
  auto add = [&](const std::string& k, uint64_t bits) {
    rep.entries.push_back({k, bits});
    rep.total_bits += bits;
  };
  auto payload = [&](const BitvecAny& bv) { return bv.size(); };
  bool dir = directed_;
  if (bits_.compressed()) {
    add(dir ? "D1_bits" : "D_bits", bits_.D_child().total_bits());
    add(dir ? "E1_bits" : "E_bits", bits_.E_child().total_bits());
    if (dir) add("D2_bits", bits_.D_parent().total_bits());
    add("P_bits", bits_.P().total_bits());
  } else {
    add(dir ? "D1_bits" : "D_bits", payload(bits_.D_child()));
    add(dir ? "E1_bits" : "E_bits", payload(bits_.E_child()));
    if (dir) add("D2_bits", payload(bits_.D_parent()));
    add("P_bits", payload(bits_.P()));
    uint64_t dirs = bits_.D_child().total_bits() - payload(bits_.D_child()) +
                    bits_.E_child().total_bits() - payload(bits_.E_child()) +
                    bits_.P().total_bits() - payload(bits_.P());
    if (dir) dirs += bits_.D_parent().total_bits() - payload(bits_.D_parent());
    add("DEP_directory_bits", dirs);
  }
  add("D_T_bits", bits_.D_T().total_bits());
  add("reached_bits", bits_.reached().total_bits());
  add("roots_bits", bits_.roots().total_bits());
  for (const char* comp : {"A", "R", "Z", "Lrm", "C", "F", "intervals", "skeleton", "la"})
    add(std::string(comp) + "_bits", cover_.component_bits(comp));
  return rep;
}

void DfsIndex::serialize(ByteWriter& w) const {
  w.u32(source_);
  w.u8(directed_ ? 1 : 0);
  bits_.serialize(w);
  cover_.serialize(w);
}

DfsIndex DfsIndex::deserialize(ByteReader& r) {
  DfsIndex idx;
  idx.source_ = r.u32();
  idx.directed_ = r.u8() != 0;
  idx.bits_ = TreeBits::deserialize(r);
  idx.cover_ = CoverIndex::deserialize(r);
  return idx;
}

}  // namespace dfsidx
