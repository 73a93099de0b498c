#include "dfsidx/encindex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dfsidx {

// ---------------------------------------------------------------------------
// ShortcutPermutation

ShortcutPermutation::ShortcutPermutation(const std::vector<uint32_t>& pi, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("permutation: epsilon must be in (0, 1]");
  n_ = uint32_t(pi.size());
  t_ = uint32_t(std::ceil(1.0 / epsilon));
  if (t_ < 1) t_ = 1;

  std::vector<uint8_t> seen(size_t(n_) + 1, 0);
  for (uint32_t v : pi) {
    if (v == 0 || v > n_ || seen[v]) throw std::invalid_argument("permutation: not a bijection");
    seen[v] = 1;
  }

  uint32_t w = bits_for(n_ ? n_ : 1);
  forward_ = FixedWidthArray(n_, w);
  for (uint32_t i = 0; i < n_; ++i) forward_.set(i, pi[i]);

  // Walk each cycle once; sample every t-th element with a back-pointer t
  // steps behind, plus the cycle head pointing at the last sample so any
  // start is within t of a shortcut.
  std::fill(seen.begin(), seen.end(), 0);
  std::vector<std::pair<uint32_t, uint32_t>> jump;  // (element, target)
  for (uint32_t s = 1; s <= n_; ++s) {
    if (seen[s]) continue;
    std::vector<uint32_t> cycle;
    uint32_t x = s;
    do {
      seen[x] = 1;
      cycle.push_back(x);
      x = pi[x - 1];
    } while (x != s);
    uint32_t len = uint32_t(cycle.size());
    if (len <= t_) continue;
    uint32_t q = (len - 1) / t_;
    for (uint32_t k = 1; k <= q; ++k) jump.push_back({cycle[k * t_], cycle[(k - 1) * t_]});
    jump.push_back({cycle[0], cycle[q * t_]});
  }
  std::sort(jump.begin(), jump.end());
  BitString mb(n_);
  shortcuts_ = FixedWidthArray(jump.size(), w);
  for (size_t i = 0; i < jump.size(); ++i) {
    mb.set(jump[i].first - 1);
    shortcuts_.set(i, jump[i].second);
  }
  marks_ = PlainBitvector(std::move(mb));
}

uint32_t ShortcutPermutation::inverse_counted(uint32_t j, uint32_t& reads) const {
  check(j);
  reads = 0;
  uint32_t x = j;
  bool jumped = false;
  for (;;) {
    uint32_t next = uint32_t(forward_.get(x - 1));
    ++reads;
    if (next == j) return x;
    if (!jumped && marks_.bit(x)) {
      x = uint32_t(shortcuts_.get(marks_.rank1(x) - 1));
      jumped = true;
    } else {
      x = next;
    }
  }
}

uint64_t ShortcutPermutation::total_bits() const {
  return forward_.total_bits() + marks_.total_bits() + shortcuts_.total_bits() + 64;
}

void ShortcutPermutation::serialize(ByteWriter& w) const {
  w.u32(n_);
  w.u32(t_);
  forward_.serialize(w);
  marks_.serialize(w);
  shortcuts_.serialize(w);
}

ShortcutPermutation ShortcutPermutation::deserialize(ByteReader& r) {
  ShortcutPermutation p;
  p.n_ = r.u32();
  p.t_ = r.u32();
  p.forward_ = FixedWidthArray::deserialize(r);
  p.marks_ = PlainBitvector::deserialize(r);
  p.shortcuts_ = FixedWidthArray::deserialize(r);
  return p;
}

// ---------------------------------------------------------------------------
// SuccinctOrderedTree

SuccinctOrderedTree::SuccinctOrderedTree(const DfsResult& tree) {
  n_ = tree.reached();
  BitString bits;
  // Preorder emission: open at first visit, close after the subtree.
  std::vector<std::pair<Vertex, uint32_t>> stack;  // (vertex, next child index)
  for (Vertex root : tree.roots) {
    if (!tree.is_reached(root)) continue;
    bits.append(true);
    stack.push_back({root, 0});
    while (!stack.empty()) {
      auto& [v, ci] = stack.back();
      if (ci < tree.children[v].size()) {
        Vertex c = tree.children[v][ci++];
        bits.append(true);
        stack.push_back({c, 0});
      } else {
        bits.append(false);
        stack.pop_back();
      }
    }
  }
  bp_ = PlainBitvector(std::move(bits));
  build_minmax();
}

void SuccinctOrderedTree::build_minmax() {
  uint64_t len = bp_.size();
  n_blocks_ = uint32_t((len + 63) / 64);
  seg_base_ = 1;
  while (seg_base_ < n_blocks_) seg_base_ <<= 1;
  seg_min_.assign(size_t(seg_base_) * 2, INT32_MAX);
  seg_cnt_.assign(size_t(seg_base_) * 2, 0);
  int64_t e = 0;
  for (uint32_t b = 0; b < n_blocks_; ++b) {
    int32_t mn = INT32_MAX;
    uint32_t cnt = 0;
    uint64_t hi = std::min<uint64_t>(uint64_t(b) * 64 + 64, len);
    for (uint64_t i = uint64_t(b) * 64 + 1; i <= hi; ++i) {
      e += bp_.bit(i) ? 1 : -1;
      if (e < mn) mn = int32_t(e), cnt = 1;
      else if (e == mn) ++cnt;
    }
    seg_min_[seg_base_ + b] = mn;
    seg_cnt_[seg_base_ + b] = cnt;
  }
  for (uint32_t i = seg_base_ - 1; i >= 1; --i) {
    int32_t l = seg_min_[2 * i], r = seg_min_[2 * i + 1];
    seg_min_[i] = std::min(l, r);
    seg_cnt_[i] = (l == seg_min_[i] ? seg_cnt_[2 * i] : 0) +
                  (r == seg_min_[i] ? seg_cnt_[2 * i + 1] : 0);
  }
}

// Smallest q > pos with prefix excess equal to target. The excess moves by
// one per position, so the first block whose minimum reaches the target
// contains a hit.
uint64_t SuccinctOrderedTree::fwd_search(uint64_t pos, int64_t target) const {
  uint64_t len = bp_.size();
  int64_t e = excess(pos);
  uint64_t block_hi = std::min((pos / 64 + 1) * 64, len);
  for (uint64_t q = pos + 1; q <= block_hi; ++q) {
    e += bp_.bit(q) ? 1 : -1;
    if (e == target) return q;
  }
  uint32_t node = uint32_t(seg_base_ + pos / 64);
  uint32_t found = 0;
  while (node > 1) {
    if ((node & 1u) == 0 && seg_min_[node + 1] <= target) {
      found = node + 1;
      break;
    }
    node >>= 1;
  }
  if (!found) throw std::out_of_range("tree navigation: forward search fell off the sequence");
  while (found < seg_base_) {
    found <<= 1;
    if (seg_min_[found] > target) ++found;
  }
  uint64_t b = found - seg_base_;
  e = excess(b * 64);
  uint64_t hi = std::min(b * 64 + 64, len);
  for (uint64_t q = b * 64 + 1; q <= hi; ++q) {
    e += bp_.bit(q) ? 1 : -1;
    if (e == target) return q;
  }
  throw std::logic_error("tree navigation: block directory inconsistent");
}

// Largest q <= pos-1 with prefix excess equal to target; 0 is the virtual
// start of the sequence (excess 0).
uint64_t SuccinctOrderedTree::bwd_search(uint64_t pos, int64_t target) const {
  uint64_t bpos = (pos - 1) / 64;
  uint64_t block_lo = bpos * 64;
  int64_t e = excess(pos);
  for (uint64_t q = pos; q-- > block_lo;) {
    e -= bp_.bit(q + 1) ? 1 : -1;
    if (e == target && (q >= 1 || target == 0)) return q;
  }
  uint32_t node = uint32_t(seg_base_ + bpos);
  uint32_t found = 0;
  while (node > 1) {
    if ((node & 1u) == 1 && seg_min_[node - 1] <= target) {
      found = node - 1;
      break;
    }
    node >>= 1;
  }
  if (!found) {
    if (target == 0) return 0;
    throw std::out_of_range("tree navigation: backward search fell off the sequence");
  }
  while (found < seg_base_) {
    found = found * 2 + 1;
    if (seg_min_[found] > target) --found;
  }
  uint64_t b = found - seg_base_;
  uint64_t hi = b * 64 + 64;
  e = excess(hi);
  if (e == target) return hi;
  for (uint64_t q = hi; q-- > b * 64;) {
    e -= bp_.bit(q + 1) ? 1 : -1;
    if (e == target && (q >= 1 || target == 0)) return q;
  }
  throw std::logic_error("tree navigation: block directory inconsistent");
}

uint64_t SuccinctOrderedTree::close_pos(uint64_t open) const {
  return fwd_search(open, excess(open) - 1);
}

uint64_t SuccinctOrderedTree::min_count(uint64_t l, uint64_t r, int64_t target) const {
  if (l > r) return 0;
  uint64_t count = 0;
  // Recursive descent, pruning segments that never reach the target.
  auto rec = [&](auto&& self, uint32_t node, uint64_t node_lo, uint64_t node_hi) -> void {
    if (node_hi < l || node_lo > r || seg_min_[node] > target) return;
    if (node_lo >= l && node_hi <= r && node < seg_base_) {
      if (seg_min_[node] == target) count += seg_cnt_[node];
      return;
    }
    if (node >= seg_base_) {
      uint64_t lo = std::max(node_lo, l), hi = std::min(node_hi, r);
      int64_t e = excess(lo - 1);
      for (uint64_t q = lo; q <= hi; ++q) {
        e += bp_.bit(q) ? 1 : -1;
        if (e == target) ++count;
      }
      return;
    }
    uint64_t mid = node_lo + (node_hi - node_lo) / 2;
    self(self, node * 2, node_lo, mid);
    self(self, node * 2 + 1, mid + 1, node_hi);
  };
  rec(rec, 1, 1, uint64_t(seg_base_) * 64);
  return count;
}

uint64_t SuccinctOrderedTree::min_select(uint64_t l, uint64_t r, int64_t target,
                                         uint64_t k) const {
  uint64_t answer = 0;
  auto rec = [&](auto&& self, uint32_t node, uint64_t node_lo, uint64_t node_hi) -> void {
    if (answer || node_hi < l || node_lo > r || seg_min_[node] > target) return;
    if (node_lo >= l && node_hi <= r && node < seg_base_ && seg_min_[node] == target &&
        seg_cnt_[node] < k) {
      k -= seg_cnt_[node];
      return;
    }
    if (node >= seg_base_) {
      uint64_t lo = std::max(node_lo, l), hi = std::min(node_hi, r);
      int64_t e = excess(lo - 1);
      for (uint64_t q = lo; q <= hi; ++q) {
        e += bp_.bit(q) ? 1 : -1;
        if (e == target && --k == 0) {
          answer = q;
          return;
        }
      }
      return;
    }
    uint64_t mid = node_lo + (node_hi - node_lo) / 2;
    self(self, node * 2, node_lo, mid);
    self(self, node * 2 + 1, mid + 1, node_hi);
  };
  rec(rec, 1, 1, uint64_t(seg_base_) * 64);
  if (!answer) throw std::out_of_range("tree navigation: select past the last occurrence");
  return answer;
}

uint32_t SuccinctOrderedTree::depth(uint32_t pre) const {
  check(pre);
  return uint32_t(excess(open_pos(pre)) - 1);
}

uint32_t SuccinctOrderedTree::degree(uint32_t pre) const {
  check(pre);
  uint64_t p = open_pos(pre);
  uint64_t c = close_pos(p);
  if (c == p + 1) return 0;
  return uint32_t(min_count(p + 1, c - 1, excess(p)));
}

uint32_t SuccinctOrderedTree::child(uint32_t pre, uint32_t i) const {
  check(pre);
  uint64_t p = open_pos(pre);
  uint64_t c = close_pos(p);
  uint32_t deg = (c == p + 1) ? 0 : uint32_t(min_count(p + 1, c - 1, excess(p)));
  if (i == 0 || i > deg) throw std::out_of_range("child index out of range");
  uint64_t open = (i == 1) ? p + 1 : min_select(p + 1, c - 1, excess(p), i - 1) + 1;
  return uint32_t(bp_.rank1(open));
}

uint32_t SuccinctOrderedTree::parent(uint32_t pre) const {
  check(pre);
  uint64_t p = open_pos(pre);
  int64_t e = excess(p);
  if (e - 1 == 0) return 0;  // root
  uint64_t q = bwd_search(p, e - 2);
  return uint32_t(bp_.rank1(q + 1));
}

uint32_t SuccinctOrderedTree::level_anc(uint32_t pre, uint32_t level) const {
  check(pre);
  uint64_t p = open_pos(pre);
  int64_t d = excess(p) - 1;  // depth of pre
  if (int64_t(level) > d) throw std::out_of_range("level below the node");
  if (int64_t(level) == d) return pre;
  uint64_t q = bwd_search(p, int64_t(level));
  return uint32_t(bp_.rank1(q + 1));
}

std::string SuccinctOrderedTree::parens_string() const {
  std::string s;
  s.reserve(bp_.size());
  for (uint64_t i = 1; i <= bp_.size(); ++i) s.push_back(bp_.bit(i) ? '(' : ')');
  return s;
}

uint64_t SuccinctOrderedTree::total_bits() const {
  return bp_.total_bits() + (seg_min_.size() * 32) + (seg_cnt_.size() * 32) + 128;
}

void SuccinctOrderedTree::serialize(ByteWriter& w) const {
  w.u32(n_);
  bp_.serialize(w);
}

SuccinctOrderedTree SuccinctOrderedTree::deserialize(ByteReader& r) {
  SuccinctOrderedTree t;
  t.n_ = r.u32();
  t.bp_ = PlainBitvector::deserialize(r);
  t.build_minmax();
  return t;
}

// ---------------------------------------------------------------------------
// EncIndex

EncIndex EncIndex::build(const AdjacencyGraph& g, Vertex source, double epsilon) {
  EncIndex e;
  e.n_ = g.num_vertices();
  e.source_ = source;
  e.epsilon_ = epsilon;
  DfsResult t = lex_dfs(g, source);
  BitString rb(e.n_);
  for (Vertex v = 1; v <= e.n_; ++v)
    if (t.is_reached(v)) rb.set(v - 1);
  e.reached_ = PlainBitvector(std::move(rb));
  std::vector<uint32_t> pi(t.reached());
  for (Vertex v = 1; v <= e.n_; ++v)
    if (t.is_reached(v)) pi[e.reached_.rank1(v) - 1] = t.dfi[v];
  e.perm_ = ShortcutPermutation(pi, epsilon);
  e.tree_ = SuccinctOrderedTree(t);
  return e;
}

Vertex EncIndex::vertex_at_dfi(uint32_t i) const {
  if (i == 0 || i > perm_.size()) throw std::out_of_range("dfi out of range");
  return expand(perm_.inverse(i));
}

bool EncIndex::is_ancestor(Vertex u, Vertex v) const {
  uint32_t nu = dfi(u), nv = dfi(v);
  if (u == v) return false;
  uint32_t du = tree_.depth(nu), dv = tree_.depth(nv);
  return du < dv && tree_.level_anc(nv, du) == nu;
}

Vertex EncIndex::parent(Vertex v) const {
  uint32_t node = dfi(v);
  uint32_t pre = tree_.parent(node);
  return pre == 0 ? kNoVertex : expand(perm_.inverse(pre));
}

std::vector<Vertex> EncIndex::children(Vertex v) const {
  uint32_t node = dfi(v);
  uint32_t deg = tree_.degree(node);
  std::vector<Vertex> out;
  out.reserve(deg);
  for (uint32_t i = 1; i <= deg; ++i) out.push_back(expand(perm_.inverse(tree_.child(node, i))));
  return out;
}

std::vector<Vertex> EncIndex::preorder() const {
  std::vector<Vertex> out;
  out.reserve(perm_.size());
  for (uint32_t i = 1; i <= perm_.size(); ++i) out.push_back(expand(perm_.inverse(i)));
  return out;
}

uint64_t EncIndex::total_bits() const {
  return perm_.total_bits() + tree_.total_bits() + reached_.total_bits() + 128;
}

void EncIndex::serialize(ByteWriter& w) const {
  w.u32(n_);
  w.u32(source_);
  w.u32(uint32_t(epsilon_ * 1000.0 + 0.5));
  reached_.serialize(w);
  perm_.serialize(w);
  tree_.serialize(w);
}

EncIndex EncIndex::deserialize(ByteReader& r) {
  EncIndex e;
  e.n_ = r.u32();
  e.source_ = r.u32();
  e.epsilon_ = double(r.u32()) / 1000.0;
  e.reached_ = PlainBitvector::deserialize(r);
  e.perm_ = ShortcutPermutation::deserialize(r);
  e.tree_ = SuccinctOrderedTree::deserialize(r);
  return e;
}

}  // namespace dfsidx
