#include "dfsidx/treecover.hpp"

#include <algorithm>
#include <set>

namespace dfsidx {

namespace {

// Partial component travelling up the tree during decomposition. `top` is the
// vertex it hangs from; at most one pending out-edge (to an already-closed
// minitree root below).
struct OpenComp {
  std::vector<Vertex> nodes;
  Vertex out_c = 0, out_d = 0;
  bool has_out() const { return out_c != 0; }
};

struct Segment {
  std::vector<Vertex> nodes;
  Vertex out_c = 0, out_d = 0;
  Vertex first_child = 0, last_child = 0;
  bool empty() const { return nodes.empty(); }
  void absorb(OpenComp&& o, Vertex child) {
    if (first_child == 0) first_child = child;
    last_child = child;
    nodes.insert(nodes.end(), o.nodes.begin(), o.nodes.end());
    if (o.has_out()) {
      out_c = o.out_c;
      out_d = o.out_d;
    }
    o.nodes.clear();
  }
};

}  // namespace

TreeCover tc_decompose(const DfsResult& tree, uint32_t L) {
  if (L < 1) throw std::invalid_argument("tc_decompose: L must be >= 1");
  if (tree.order.empty()) throw std::invalid_argument("tc_decompose: empty tree");

  TreeCover cover;
  cover.L = L;
  cover.owner_nonroot.assign(size_t(tree.n) + 1, -1);
  cover.is_root.assign(size_t(tree.n) + 1, 0);
  cover.root_minitrees.assign(size_t(tree.n) + 1, {});

  std::vector<OpenComp> open(size_t(tree.n) + 1);
  std::vector<uint8_t> has_open(size_t(tree.n) + 1, 0);

  auto close_segment = [&](Vertex v, Segment&& seg) {
    Minitree m;
    m.root = v;
    m.nodes.push_back(v);
    m.nodes.insert(m.nodes.end(), seg.nodes.begin(), seg.nodes.end());
    m.first_root_child = seg.first_child;
    m.last_root_child = seg.last_child;
    if (seg.first_child != 0) m.first_root_child_slot = tree.child_slot_in_parent[seg.first_child];
    m.out_c = seg.out_c;
    m.out_d = seg.out_d;
    uint32_t id = uint32_t(cover.minitrees.size());
    for (Vertex u : seg.nodes) cover.owner_nonroot[u] = int32_t(id);
    cover.is_root[v] = 1;
    cover.minitrees.push_back(std::move(m));
  };

  // Reverse preorder puts every child before its parent.
  for (auto it = tree.order.rbegin(); it != tree.order.rend(); ++it) {
    Vertex v = *it;
    Segment cur;
    std::vector<Segment> parked;
    std::vector<Vertex> gap_children;
    bool consumed = false;

    auto close_cur = [&]() {
      close_segment(v, std::move(cur));
      cur = Segment{};
      consumed = true;
    };

    for (Vertex c : tree.children[v]) {
      if (!has_open[c]) {  // child was consumed below: a gap in the run
        gap_children.push_back(c);
        if (!cur.empty()) {
          if (consumed)
            close_cur();
          else
            parked.push_back(std::move(cur)), cur = Segment{};
        }
        continue;
      }
      OpenComp oc = std::move(open[c]);
      has_open[c] = 0;
      if (cur.out_c != 0 && oc.has_out()) close_cur();  // two out-edges never mix
      cur.absorb(std::move(oc), c);
      if (cur.nodes.size() >= L) close_cur();
    }

    bool at_root = tree.parent[v] == 0;
    if (!consumed && !at_root) {
      size_t pending = gap_children.size() + (cur.out_c != 0 ? 1 : 0);
      size_t total = 1 + cur.nodes.size();
      for (const auto& s : parked) {
        pending += s.out_c != 0 ? 1 : 0;
        total += s.nodes.size();
      }
      if (pending <= 1 && total <= L) {
        OpenComp& o = open[v];
        o.nodes.clear();
        o.nodes.push_back(v);
        for (auto& s : parked) {
          o.nodes.insert(o.nodes.end(), s.nodes.begin(), s.nodes.end());
          if (s.out_c != 0) o.out_c = s.out_c, o.out_d = s.out_d;
        }
        o.nodes.insert(o.nodes.end(), cur.nodes.begin(), cur.nodes.end());
        if (cur.out_c != 0) o.out_c = cur.out_c, o.out_d = cur.out_d;
        if (!gap_children.empty()) o.out_c = v, o.out_d = gap_children.front();
        has_open[v] = 1;
        continue;
      }
    }
    // v becomes a (possibly shared) minitree root.
    for (auto& s : parked)
      if (!s.empty()) close_segment(v, std::move(s));
    if (!cur.empty()) close_segment(v, std::move(cur));
    if (!cover.is_root[v]) close_segment(v, Segment{});  // lone-root minitree
  }

  // Left-to-right order of the minitrees sharing each root, then satellites.
  for (uint32_t id = 0; id < cover.minitrees.size(); ++id)
    cover.root_minitrees[cover.minitrees[id].root].push_back(id);
  for (auto& list : cover.root_minitrees)
    std::sort(list.begin(), list.end(), [&](uint32_t a, uint32_t b) {
      const auto& ma = cover.minitrees[a];
      const auto& mb = cover.minitrees[b];
      uint32_t da = ma.first_root_child ? tree.dfi[ma.first_root_child] : 0;
      uint32_t db = mb.first_root_child ? tree.dfi[mb.first_root_child] : 0;
      return da < db;
    });

  for (auto& m : cover.minitrees) {
    if (m.first_root_child == 0) {
      m.rightmost_leaf = m.root;
      continue;
    }
    Vertex x = m.last_root_child;
    int32_t id = cover.owner_nonroot[x];
    for (;;) {
      Vertex next = 0;
      const auto& ch = tree.children[x];
      for (auto cit = ch.rbegin(); cit != ch.rend(); ++cit)
        if (cover.owner_nonroot[*cit] == id) {
          next = *cit;
          break;
        }
      if (next == 0) break;
      x = next;
    }
    m.rightmost_leaf = x;
  }
  return cover;
}

std::vector<std::string> tc_validate(const TreeCover& cover, const DfsResult& tree,
                                     uint32_t max_count_factor) {
  std::vector<std::string> bad;
  uint32_t L = cover.L;
  uint64_t reached = tree.reached();
  if (cover.minitrees.size() * uint64_t(L) > uint64_t(max_count_factor) * reached &&
      cover.minitrees.size() > 1)
    bad.push_back("minitree count " + std::to_string(cover.minitrees.size()) + " exceeds " +
                  std::to_string(max_count_factor) + "n/L");

  std::vector<uint32_t> nonroot_hits(size_t(tree.n) + 1, 0);
  std::vector<uint32_t> covered(size_t(tree.n) + 1, 0);
  for (uint32_t id = 0; id < cover.minitrees.size(); ++id) {
    const auto& m = cover.minitrees[id];
    if (m.nodes.size() > 2 * uint64_t(L))
      bad.push_back("minitree " + std::to_string(id) + " has " +
                    std::to_string(m.nodes.size()) + " nodes > 2L");
    std::set<Vertex> members(m.nodes.begin(), m.nodes.end());
    if (members.size() != m.nodes.size())
      bad.push_back("minitree " + std::to_string(id) + " repeats a node");
    uint32_t out_edges = 0;
    for (Vertex u : m.nodes) {
      covered[u] = 1;
      if (u != m.root) ++nonroot_hits[u];
      for (Vertex c : tree.children[u])
        if (!members.count(c)) {
          if (u == m.root) continue;  // edges stemming from the root are free
          ++out_edges;
          if (u != m.out_c || c != m.out_d)
            bad.push_back("minitree " + std::to_string(id) + " leaks edge " +
                          std::to_string(u) + "->" + std::to_string(c) +
                          " not matching its out-edge record");
        }
    }
    if (out_edges > 1)
      bad.push_back("minitree " + std::to_string(id) + " has " + std::to_string(out_edges) +
                    " out-edges");
    // The root's children inside the minitree must be one contiguous run.
    if (m.first_root_child != 0) {
      bool in_run = false, run_done = false;
      for (Vertex c : tree.children[m.root]) {
        bool inside = members.count(c) != 0;
        if (c == m.first_root_child) in_run = true;
        if (in_run && !run_done && !inside)
          bad.push_back("minitree " + std::to_string(id) + " root-child run broken at " +
                        std::to_string(c));
        if (inside && (!in_run || run_done))
          bad.push_back("minitree " + std::to_string(id) + " root child " + std::to_string(c) +
                        " outside run");
        if (c == m.last_root_child) run_done = true, in_run = false;
      }
    }
  }
  for (Vertex v = 1; v <= tree.n; ++v) {
    if (!tree.is_reached(v)) continue;
    if (!covered[v]) bad.push_back("vertex " + std::to_string(v) + " not covered");
    if (nonroot_hits[v] > 1)
      bad.push_back("vertex " + std::to_string(v) + " is a non-root of several minitrees");
    if (nonroot_hits[v] > 0 && cover.is_root[v])
      bad.push_back("vertex " + std::to_string(v) + " is both root and non-root");
  }
  return bad;
}

uint32_t Skeleton::id_of(Vertex root) const {
  auto it = std::lower_bound(roots.begin(), roots.end(), root);
  if (it == roots.end() || *it != root) throw std::logic_error("skeleton: not a minitree root");
  return uint32_t(it - roots.begin());
}

Skeleton tc_skeleton_build(const TreeCover& cover, const DfsResult& tree) {
  Skeleton s;
  for (Vertex v = 1; v <= tree.n; ++v)
    if (cover.is_root[v]) s.roots.push_back(v);
  uint32_t k = uint32_t(s.roots.size());
  s.parent.assign(k, Skeleton::kNone);
  s.children.assign(k, {});
  s.skel_depth.assign(k, 0);
  s.tree_depth.assign(k, 0);
  s.root_pointers.assign(k, {});
  s.items.assign(k, {});

  for (uint32_t i = 0; i < k; ++i) {
    Vertex r = s.roots[i];
    s.tree_depth[i] = tree.depth[r];
    Vertex p = tree.parent[r];
    while (p != 0 && !cover.is_root[p]) p = tree.parent[p];
    if (p != 0) {
      uint32_t pi = s.id_of(p);
      s.parent[i] = pi;
      s.children[pi].push_back(i);
    }
  }
  // Depths: roots are sorted by vertex id, which is not topological; walk
  // each chain once with memoization.
  std::vector<uint8_t> done(k, 0);
  for (uint32_t i = 0; i < k; ++i) {
    std::vector<uint32_t> chain;
    uint32_t x = i;
    while (x != Skeleton::kNone && !done[x]) {
      chain.push_back(x);
      x = s.parent[x];
    }
    uint32_t base = (x == Skeleton::kNone) ? 0 : s.skel_depth[x] + 1;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      s.skel_depth[*it] = base++;
      done[*it] = 1;
    }
  }

  for (uint32_t i = 0; i < k; ++i) {
    Vertex r = s.roots[i];
    for (uint32_t mid : cover.root_minitrees[r]) s.root_pointers[i].push_back(mid);
    // Items in child order: a minitree appears at its first root child, a
    // skeleton child that hangs directly below r appears where it sits.
    for (Vertex c : tree.children[r]) {
      if (cover.is_root[c]) {
        s.items[i].push_back({true, s.id_of(c)});
      } else {
        int32_t id = cover.owner_nonroot[c];
        if (id >= 0 && cover.minitrees[size_t(id)].first_root_child == c)
          s.items[i].push_back({false, uint32_t(id)});
      }
    }
  }
  return s;
}

LevelAncestorIndex::LevelAncestorIndex(const Skeleton& s) {
  uint32_t k = s.size();
  depth_ = s.skel_depth;
  uint32_t roots_seen = 0;
  for (uint32_t i = 0; i < k; ++i)
    if (s.parent[i] == Skeleton::kNone) ++roots_seen;
  if (k > 0 && roots_seen != 1)
    throw std::runtime_error("level ancestor: skeleton is not a single tree");

  // Long-path decomposition by height.
  std::vector<uint32_t> height(k, 0), path_child(k, Skeleton::kNone);
  std::vector<uint32_t> order(k);
  for (uint32_t i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](uint32_t a, uint32_t b) { return depth_[a] > depth_[b]; });
  for (uint32_t x : order) {
    for (uint32_t c : s.children[x])
      if (path_child[x] == Skeleton::kNone || height[c] > height[path_child[x]])
        path_child[x] = c;
    height[x] = path_child[x] == Skeleton::kNone ? 0 : height[path_child[x]] + 1;
  }

  ladder_of_.assign(k, 0);
  pos_in_ladder_.assign(k, 0);
  for (uint32_t x = 0; x < k; ++x) {
    bool head = s.parent[x] == Skeleton::kNone || path_child[s.parent[x]] != x;
    if (!head) continue;
    std::vector<uint32_t> path;
    for (uint32_t y = x; y != Skeleton::kNone; y = path_child[y]) path.push_back(y);
    uint32_t len = uint32_t(path.size());
    // Extend upward by the path length (capped at the root).
    std::vector<uint32_t> ups;
    uint32_t y = s.parent[x];
    while (ups.size() < len && y != Skeleton::kNone) {
      ups.push_back(y);
      y = s.parent[y];
    }
    uint32_t ladder_id = uint32_t(ladder_offset_.size());
    ladder_offset_.push_back(uint32_t(ladder_nodes_.size()));
    for (auto uit = ups.rbegin(); uit != ups.rend(); ++uit) ladder_nodes_.push_back(*uit);
    uint32_t base = uint32_t(ups.size());
    for (uint32_t idx = 0; idx < len; ++idx) {
      ladder_nodes_.push_back(path[idx]);
      ladder_of_[path[idx]] = ladder_id;
      pos_in_ladder_[path[idx]] = base + idx;
    }
  }

  // Binary-lifted ancestors, processed parents-first by depth.
  jump_offset_.assign(k + 1, 0);
  for (uint32_t x = 0; x < k; ++x)
    jump_offset_[x + 1] = depth_[x] == 0 ? 0 : floor_log2(depth_[x]) + 1;
  for (uint32_t x = 0; x < k; ++x) jump_offset_[x + 1] += jump_offset_[x];
  jump_flat_.assign(jump_offset_[k], 0);
  std::sort(order.begin(), order.end(),
            [&](uint32_t a, uint32_t b) { return depth_[a] < depth_[b]; });
  for (uint32_t x : order) {
    if (depth_[x] == 0) continue;
    uint32_t levels = jump_offset_[x + 1] - jump_offset_[x];
    jump_flat_[jump_offset_[x]] = s.parent[x];
    for (uint32_t j = 1; j < levels; ++j) {
      uint32_t half = jump_flat_[jump_offset_[x] + j - 1];
      jump_flat_[jump_offset_[x] + j] = jump_flat_[jump_offset_[half] + j - 1];
    }
  }
}

uint32_t LevelAncestorIndex::query(uint32_t x, uint32_t level) const {
  if (x >= depth_.size()) throw std::out_of_range("level ancestor: bad node");
  if (level > depth_[x]) throw std::out_of_range("level ancestor: level below node");
  uint32_t d = depth_[x] - level;
  if (d == 0) return x;
  uint32_t kk = floor_log2(d);
  uint32_t y = jump_flat_[jump_offset_[x] + kk];
  uint32_t rem = d - (uint32_t(1) << kk);
  if (rem == 0) return y;
  return ladder_nodes_[ladder_offset_[ladder_of_[y]] + pos_in_ladder_[y] - rem];
}

uint64_t LevelAncestorIndex::total_bits() const {
  uint32_t w = bits_for(depth_.empty() ? 1 : depth_.size());
  return (ladder_nodes_.size() + jump_flat_.size()) * w +
         (ladder_offset_.size() + ladder_of_.size() + pos_in_ladder_.size() + depth_.size() +
          jump_offset_.size()) *
             uint64_t(w) +
         256;
}

namespace {
void write_u32_vec(ByteWriter& w, const std::vector<uint32_t>& v) {
  w.u64(v.size());
  for (uint32_t x : v) w.u32(x);
}
std::vector<uint32_t> read_u32_vec(ByteReader& r) {
  uint64_t n = r.u64();
  std::vector<uint32_t> v(n);
  for (auto& x : v) x = r.u32();
  return v;
}
}  // namespace

void LevelAncestorIndex::serialize(ByteWriter& w) const {
  write_u32_vec(w, depth_);
  write_u32_vec(w, ladder_nodes_);
  write_u32_vec(w, ladder_offset_);
  write_u32_vec(w, ladder_of_);
  write_u32_vec(w, pos_in_ladder_);
  write_u32_vec(w, jump_flat_);
  write_u32_vec(w, jump_offset_);
}

LevelAncestorIndex LevelAncestorIndex::deserialize(ByteReader& r) {
  LevelAncestorIndex la;
  la.depth_ = read_u32_vec(r);
  la.ladder_nodes_ = read_u32_vec(r);
  la.ladder_offset_ = read_u32_vec(r);
  la.ladder_of_ = read_u32_vec(r);
  la.pos_in_ladder_ = read_u32_vec(r);
  la.jump_flat_ = read_u32_vec(r);
  la.jump_offset_ = read_u32_vec(r);
  return la;
}

}  // namespace dfsidx
