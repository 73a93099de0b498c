#include "dfsidx/apps.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace dfsidx {

namespace {

constexpr uint64_t kInf = ~uint64_t(0);

// Assembles the DfsResult-shaped view of an explicitly given forest:
// preorder numbering with children in the given order.
DfsResult tree_from_parents(Vertex n, const std::vector<Vertex>& roots,
                            const std::vector<Vertex>& parent,
                            const std::vector<std::vector<Vertex>>& children) {
  DfsResult t;
  t.n = n;
  t.roots = roots;
  t.parent = parent;
  t.children = children;
  t.dfi.assign(size_t(n) + 1, 0);
  t.depth.assign(size_t(n) + 1, 0);
  t.child_slot_in_parent.assign(size_t(n) + 1, 0);
  t.parent_slot_in_child.assign(size_t(n) + 1, 0);
  uint32_t next = 1;
  for (Vertex r : roots) {
    std::vector<std::pair<Vertex, uint32_t>> stack{{r, 0}};
    t.dfi[r] = next++;
    t.order.push_back(r);
    while (!stack.empty()) {
      auto& [v, ci] = stack.back();
      if (ci < children[v].size()) {
        Vertex c = children[v][ci++];
        t.dfi[c] = next++;
        t.order.push_back(c);
        t.depth[c] = t.depth[v] + 1;
        stack.push_back({c, 0});
      } else {
        stack.pop_back();
      }
    }
  }
  t.subtree_size.assign(size_t(n) + 1, 0);
  for (auto it = t.order.rbegin(); it != t.order.rend(); ++it) {
    uint32_t s = 1;
    for (Vertex c : children[*it]) s += t.subtree_size[c];
    t.subtree_size[*it] = s;
  }
  return t;
}

// Forest tree-root label per vertex (parents precede children in order).
std::vector<Vertex> tree_root_of(const DfsResult& t) {
  std::vector<Vertex> root_of(size_t(t.n) + 1, 0);
  for (Vertex v : t.order) root_of[v] = t.parent[v] == 0 ? v : root_of[t.parent[v]];
  return root_of;
}

}  // namespace

// ---------------------------------------------------------------------------
// SpIndex

SpIndex SpIndex::build(const AdjacencyGraph& g, Vertex source) {
  g.check_vertex(source);
  Vertex n = g.num_vertices();
  std::vector<uint64_t> dist(size_t(n) + 1, kInf);
  std::vector<Vertex> parent(size_t(n) + 1, 0);
  std::vector<uint32_t> parent_slot(size_t(n) + 1, 0);  // slot of v in parent's out-array
  using Item = std::pair<uint64_t, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[source] = 0;
  heap.push({0, source});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d != dist[v]) continue;
    for (uint32_t j = 1; j <= g.out_degree(v); ++j) {
      Vertex u = g.neighbor(v, j);
      uint64_t w = g.weight_at(v, j);
      if (dist[v] + w < dist[u]) {
        dist[u] = dist[v] + w;
        parent[u] = v;
        parent_slot[u] = j;
        heap.push({dist[u], u});
      }
    }
  }

  // Shortest-path tree with children ordered by their slot in the parent's
  // out-array, then the usual tree machinery over it.
  std::vector<std::vector<std::pair<uint32_t, Vertex>>> by_slot(size_t(n) + 1);
  for (Vertex v = 1; v <= n; ++v)
    if (v != source && dist[v] != kInf) by_slot[parent[v]].push_back({parent_slot[v], v});
  std::vector<std::vector<Vertex>> children(size_t(n) + 1);
  for (Vertex v = 1; v <= n; ++v) {
    std::sort(by_slot[v].begin(), by_slot[v].end());
    for (auto& [slot, c] : by_slot[v]) children[v].push_back(c);
  }
  DfsResult t = tree_from_parents(n, {source}, parent, children);
  for (Vertex v = 1; v <= n; ++v) {
    if (v == source || !t.is_reached(v)) continue;
    t.child_slot_in_parent[v] = parent_slot[v];
    t.parent_slot_in_child[v] = g.find_in_slot(v, parent[v]);
  }

  SpIndex idx;
  idx.source_ = source;
  idx.bits_ = TreeBits(g, t, AdjSide::Out, g.directed() ? AdjSide::In : AdjSide::Out,
                       g.num_edges() > 4 * uint64_t(n));
  idx.cover_ = CoverIndex(g, t, idx.bits_, default_cover_param(n), true);
  idx.root_dist_.assign(idx.cover_.A().ones(), 0);
  for (uint32_t i = 0; i < idx.root_dist_.size(); ++i)
    idx.root_dist_[i] = dist[idx.cover_.root_of_skel(i)];
  return idx;
}

uint64_t SpIndex::dist(const AdjacencyGraph& g, Vertex v) const {
  bits_.check_reached(v);
  uint64_t total = 0;
  Vertex x = v;
  while (!cover_.is_minitree_root(x)) {
    auto [p, slot] = bits_.parent_with_slot(g, x);
    total += g.directed() ? g.in_weight_at(x, slot) : g.weight_at(x, slot);
    x = p;
  }
  return total + root_dist_[cover_.skel_id(x)];
}

std::vector<Vertex> SpIndex::path(const AdjacencyGraph& g, Vertex v) const {
  bits_.check_reached(v);
  std::vector<Vertex> out{v};
  Vertex x = v;
  while (x != source_) {
    x = bits_.parent(g, x);
    out.push_back(x);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

void SpIndex::serialize(ByteWriter& w) const {
  w.u32(source_);
  bits_.serialize(w);
  cover_.serialize(w);
  w.u64_vec(root_dist_);
}

SpIndex SpIndex::deserialize(ByteReader& r) {
  SpIndex idx;
  idx.source_ = r.u32();
  idx.bits_ = TreeBits::deserialize(r);
  idx.cover_ = CoverIndex::deserialize(r);
  idx.root_dist_ = r.u64_vec();
  return idx;
}

// ---------------------------------------------------------------------------
// ConnIndex

ConnIndex ConnIndex::build(const AdjacencyGraph& g) {
  if (g.directed()) throw std::invalid_argument("connectivity index needs an undirected graph");
  Vertex n = g.num_vertices();
  std::vector<Vertex> starts(n);
  for (Vertex v = 1; v <= n; ++v) starts[v - 1] = v;
  DfsResult t = lex_dfs_forest(g, starts);
  ConnIndex idx;
  idx.bits_ = TreeBits(g, t, AdjSide::Out, AdjSide::Out, g.num_edges() > 4 * uint64_t(n));
  idx.cover_ = CoverIndex(g, t, idx.bits_, default_cover_param(n), true);
  std::vector<Vertex> root_of = tree_root_of(t);
  uint32_t k = uint32_t(idx.cover_.A().ones());
  idx.label_ = FixedWidthArray(k, bits_for(uint64_t(n) + 1));
  for (uint32_t i = 0; i < k; ++i) idx.label_.set(i, root_of[idx.cover_.root_of_skel(i)]);
  return idx;
}

Vertex ConnIndex::tree_root_label(const AdjacencyGraph& g, Vertex v) const {
  auto [stop, skel] = cover_.climb_to_cover_root(g, bits_, v);
  return skel == UINT32_MAX ? stop : Vertex(label_.get(skel));
}

bool ConnIndex::connected(const AdjacencyGraph& g, Vertex u, Vertex v) const {
  return tree_root_label(g, u) == tree_root_label(g, v);
}

void ConnIndex::serialize(ByteWriter& w) const {
  bits_.serialize(w);
  cover_.serialize(w);
  label_.serialize(w);
}

ConnIndex ConnIndex::deserialize(ByteReader& r) {
  ConnIndex idx;
  idx.bits_ = TreeBits::deserialize(r);
  idx.cover_ = CoverIndex::deserialize(r);
  idx.label_ = FixedWidthArray::deserialize(r);
  return idx;
}

// ---------------------------------------------------------------------------
// SccIndex

SccIndex SccIndex::build(const AdjacencyGraph& g) {
  if (!g.directed()) throw std::invalid_argument("scc index needs a directed graph");
  Vertex n = g.num_vertices();
  DfsResult p2 = lex_dfs_forest_reversed(g, finish_order_descending(g));

  // Virtual super-root n+1 over the second-pass trees, for the cover only.
  DfsResult vt;
  vt.n = n + 1;
  vt.roots = {n + 1};
  vt.parent = p2.parent;
  vt.parent.push_back(0);
  vt.children = p2.children;
  vt.children.push_back(p2.roots);
  for (Vertex r : p2.roots) vt.parent[r] = n + 1;
  vt.dfi.assign(size_t(n) + 2, 0);
  vt.dfi[n + 1] = 1;
  for (Vertex v = 1; v <= n; ++v) vt.dfi[v] = p2.dfi[v] ? p2.dfi[v] + 1 : 0;
  vt.order.push_back(n + 1);
  vt.order.insert(vt.order.end(), p2.order.begin(), p2.order.end());
  vt.depth.assign(size_t(n) + 2, 0);
  for (Vertex v = 1; v <= n; ++v) vt.depth[v] = p2.depth[v] + 1;
  vt.subtree_size = p2.subtree_size;
  vt.subtree_size.push_back(p2.reached() + 1);
  vt.child_slot_in_parent.assign(size_t(n) + 2, 0);
  vt.parent_slot_in_child.assign(size_t(n) + 2, 0);
  for (Vertex v = 1; v <= n; ++v) {
    vt.child_slot_in_parent[v] = p2.child_slot_in_parent[v];
    vt.parent_slot_in_child[v] = p2.parent_slot_in_child[v];
  }

  SccIndex idx;
  idx.bits_ = TreeBits(g, p2, AdjSide::In, AdjSide::Out, g.num_edges() > 4 * uint64_t(n));
  idx.cover_ = CoverIndex(g, p2, vt, idx.bits_, default_cover_param(n), true);
  std::vector<Vertex> root_of = tree_root_of(p2);
  uint32_t k = uint32_t(idx.cover_.A().ones());
  idx.label_ = FixedWidthArray(k, bits_for(uint64_t(n) + 1));
  for (uint32_t i = 0; i < k; ++i) idx.label_.set(i, root_of[idx.cover_.root_of_skel(i)]);
  return idx;
}

Vertex SccIndex::component_root(const AdjacencyGraph& g, Vertex v) const {
  auto [stop, skel] = cover_.climb_to_cover_root(g, bits_, v);
  return skel == UINT32_MAX ? stop : Vertex(label_.get(skel));
}

std::vector<Vertex> SccIndex::members(const AdjacencyGraph& g, Vertex v) const {
  Vertex r = component_root(g, v);
  std::vector<Vertex> out;
  std::vector<Vertex> stack{r};
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    out.push_back(x);
    uint32_t cnt = bits_.num_children(x);
    for (uint32_t j = cnt; j >= 1; --j) stack.push_back(bits_.child_at(g, x, j));
  }
  return out;
}

std::vector<Vertex> SccIndex::component_roots() const {
  std::vector<Vertex> out;
  for (uint64_t i = 1; i <= bits_.roots().ones(); ++i)
    out.push_back(Vertex(bits_.roots().select1(i)));
  return out;
}

void SccIndex::serialize(ByteWriter& w) const {
  bits_.serialize(w);
  cover_.serialize(w);
  label_.serialize(w);
}

SccIndex SccIndex::deserialize(ByteReader& r) {
  SccIndex idx;
  idx.bits_ = TreeBits::deserialize(r);
  idx.cover_ = CoverIndex::deserialize(r);
  idx.label_ = FixedWidthArray::deserialize(r);
  return idx;
}

// ---------------------------------------------------------------------------
// Biconnectivity helpers

namespace {

// Lowlink-style scan: iterative DFS over the stored tree computing, for each
// vertex, the smallest DFI reachable through a back edge inside its subtree.
struct LowScan {
  const AdjacencyGraph& g;
  const DfsIndex& idx;
  std::map<Vertex, uint32_t> dfi_memo;
  std::map<Vertex, uint64_t> low_memo;

  uint32_t dfi(Vertex v) {
    auto it = dfi_memo.find(v);
    if (it != dfi_memo.end()) return it->second;
    uint32_t d = idx.dfi(g, v);
    dfi_memo.emplace(v, d);
    return d;
  }
  // Smallest back-edge target DFI within v's subtree (inclusive); kInf if none.
  uint64_t low(Vertex v) {
    auto it = low_memo.find(v);
    if (it != low_memo.end()) return it->second;
    uint64_t best = kInf;
    std::vector<Vertex> stack{v};
    std::vector<Vertex> seen_order;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      seen_order.push_back(x);
      Vertex px = idx.parent(g, x);
      for (uint32_t j = 1; j <= g.out_degree(x); ++j) {
        Vertex t = g.neighbor(x, j);
        if (t == px) continue;
        if (dfi(t) < dfi(x)) best = std::min(best, uint64_t(dfi(t)));
      }
      for (Vertex c : idx.children(g, x)) stack.push_back(c);
    }
    low_memo.emplace(v, best);
    return best;
  }
};

void check_is_edge(const AdjacencyGraph& g, Vertex u, Vertex v) {
  g.check_vertex(u);
  g.check_vertex(v);
  const auto& adj = g.out_neighbors(u);
  if (std::find(adj.begin(), adj.end(), v) == adj.end())
    throw std::invalid_argument("argument is not an edge of the graph");
}

Edge norm_edge(Vertex u, Vertex v) { return {std::min(u, v), std::max(u, v)}; }

// Smallest DFI reachable from each vertex through one back edge inside its
// subtree (classical lowpoint), over the stored lex-DFS tree.
std::vector<uint32_t> lowpoints(const AdjacencyGraph& g, const DfsResult& t) {
  std::vector<uint32_t> low(size_t(t.n) + 1, 0);
  for (auto it = t.order.rbegin(); it != t.order.rend(); ++it) {
    Vertex v = *it;
    low[v] = t.dfi[v];
    for (uint32_t j = 1; j <= g.out_degree(v); ++j) {
      Vertex u = g.neighbor(v, j);
      if (u == t.parent[v]) continue;
      if (t.dfi[u] < t.dfi[v]) low[v] = std::min(low[v], t.dfi[u]);
    }
    for (Vertex c : t.children[v]) low[v] = std::min(low[v], low[c]);
  }
  return low;
}

}  // namespace

// ---------------------------------------------------------------------------
// BiconIndex

BiconIndex BiconIndex::build(const AdjacencyGraph& g) {
  if (g.directed()) throw std::invalid_argument("biconnectivity index needs an undirected graph");
  BiconIndex idx;
  idx.idx_ = DfsIndex::build(g, 1);
  if (idx.idx_.reached_count() != g.num_vertices())
    throw std::invalid_argument("biconnectivity index needs a connected graph");

  DfsResult t = lex_dfs(g, 1);
  Vertex n = g.num_vertices();
  std::vector<uint32_t> low = lowpoints(g, t);
  BitString hb(n);
  for (Vertex v = 1; v <= n; ++v) {
    if (v == 1) {
      if (t.children[v].size() >= 2) hb.set(v - 1);
    } else {
      for (Vertex c : t.children[v])
        if (low[c] >= t.dfi[v]) {
          hb.set(v - 1);
          break;
        }
    }
  }
  idx.h_ = PlainBitvector(std::move(hb));
  return idx;
}

std::vector<Vertex> BiconIndex::cut_vertices() const {
  std::vector<Vertex> out;
  for (uint64_t i = 1; i <= h_.ones(); ++i) out.push_back(Vertex(h_.select1(i)));
  return out;
}

std::vector<Edge> BiconIndex::component_edges(const AdjacencyGraph& g, Vertex u, Vertex v) const {
  check_is_edge(g, u, v);
  LowScan scan{g, idx_, {}, {}};
  // Reduce to the tree edge whose block is queried: a back edge shares its
  // block with the parent edge of its deeper endpoint.
  Vertex c;
  if (idx_.parent(g, v) == u)
    c = v;
  else if (idx_.parent(g, u) == v)
    c = u;
  else
    c = scan.dfi(u) > scan.dfi(v) ? u : v;

  // Climb to the block's top: stop below the first cut vertex the block does
  // not cross (no back edge from this side reaches above it).
  Vertex top = c;
  for (;;) {
    Vertex p = idx_.parent(g, top);
    if (p == kNoVertex) {  // reached the DFS root: it belongs to this block
      break;
    }
    if (!h_.bit(p)) {
      top = p;
      continue;
    }
    if (scan.low(top) < scan.dfi(p))
      top = p;
    else
      break;
  }
  Vertex r_b = idx_.parent(g, top);  // block root; kNoVertex means `top` is the DFS root

  // Expand downward: a child edge stays in the block unless its parent is a
  // cut vertex and the child subtree has no back edge above it.
  std::vector<Vertex> members;  // vertices whose parent edge is in the block
  std::vector<Vertex> stack;
  if (r_b == kNoVertex) {
    // The climb only ends on the DFS root when the root is not a cut vertex,
    // in which case it has a single tree child and roots this block itself.
    r_b = top;
    for (Vertex ch : idx_.children(g, top)) stack.push_back(ch);
  } else {
    stack.push_back(top);
  }
  while (!stack.empty()) {
    Vertex y = stack.back();
    stack.pop_back();
    members.push_back(y);
    bool cut = h_.bit(y);
    for (Vertex d : idx_.children(g, y)) {
      if (!cut || scan.low(d) < scan.dfi(y)) stack.push_back(d);
    }
  }

  std::vector<Edge> edges;
  for (Vertex y : members) {
    edges.push_back(norm_edge(idx_.parent(g, y), y));
    Vertex py = idx_.parent(g, y);
    for (uint32_t j = 1; j <= g.out_degree(y); ++j) {
      Vertex t2 = g.neighbor(y, j);
      if (t2 == py) continue;
      if (scan.dfi(t2) < scan.dfi(y)) edges.push_back(norm_edge(y, t2));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

bool BiconIndex::same_component(const AdjacencyGraph& g, Edge e1, Edge e2) const {
  check_is_edge(g, e2.first, e2.second);
  auto edges = component_edges(g, e1.first, e1.second);
  return std::binary_search(edges.begin(), edges.end(), norm_edge(e2.first, e2.second));
}

void BiconIndex::serialize(ByteWriter& w) const {
  idx_.serialize(w);
  h_.serialize(w);
}

BiconIndex BiconIndex::deserialize(ByteReader& r) {
  BiconIndex idx;
  idx.idx_ = DfsIndex::deserialize(r);
  idx.h_ = PlainBitvector::deserialize(r);
  return idx;
}

// ---------------------------------------------------------------------------
// TeccIndex

TeccIndex TeccIndex::build(const AdjacencyGraph& g) {
  if (g.directed()) throw std::invalid_argument("2-edge-connectivity index needs an undirected graph");
  TeccIndex idx;
  idx.idx_ = DfsIndex::build(g, 1);
  if (idx.idx_.reached_count() != g.num_vertices())
    throw std::invalid_argument("2-edge-connectivity index needs a connected graph");

  DfsResult t = lex_dfs(g, 1);
  Vertex n = g.num_vertices();
  std::vector<uint32_t> low = lowpoints(g, t);
  // A tree edge (parent, c) is a bridge iff nothing in c's subtree reaches
  // above c; mark it at c's parent-direction slot.
  std::vector<uint64_t> off(size_t(n) + 2, 0);
  off[1] = 1;
  for (Vertex v = 1; v <= n; ++v) off[v + 1] = off[v] + 1 + g.out_degree(v);
  BitString yb(off[n + 1] - 1);
  for (Vertex c = 2; c <= n; ++c)
    if (low[c] == t.dfi[c]) yb.set(off[c] + t.parent_slot_in_child[c] - 1);
  idx.y_ = PlainBitvector(std::move(yb));
  return idx;
}

void TeccIndex::check_edge(const AdjacencyGraph& g, Vertex u, Vertex v) const {
  check_is_edge(g, u, v);
}

bool TeccIndex::is_bridge(const AdjacencyGraph& g, Vertex u, Vertex v) const {
  check_edge(g, u, v);
  Vertex c;
  if (idx_.parent(g, v) == u)
    c = v;
  else if (idx_.parent(g, u) == v)
    c = u;
  else
    return false;  // non-tree edges close cycles
  uint64_t pos = idx_.bits().P().select1(idx_.bits().parent_mark_rank(c));
  return y_.bit(pos);
}

std::vector<Edge> TeccIndex::bridges(const AdjacencyGraph& g) const {
  std::vector<Edge> out;
  for (uint64_t i = 1; i <= y_.ones(); ++i) {
    uint64_t pos = y_.select1(i);
    Vertex c = Vertex(idx_.bits().D_parent().rank1(pos));
    out.push_back(norm_edge(idx_.parent(g, c), c));
  }
  return out;
}

std::vector<Edge> TeccIndex::component_edges(const AdjacencyGraph& g, Vertex u, Vertex v) const {
  check_edge(g, u, v);
  if (is_bridge(g, u, v)) return {norm_edge(u, v)};
  // Flood from u through non-bridge edges; the component's edges are those
  // between flooded vertices.
  std::vector<uint8_t> in(size_t(g.num_vertices()) + 1, 0);
  std::vector<Vertex> stack{u};
  in[u] = 1;
  std::vector<Edge> edges;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (uint32_t j = 1; j <= g.out_degree(x); ++j) {
      Vertex t2 = g.neighbor(x, j);
      if (is_bridge(g, x, t2)) continue;
      if (x < t2) edges.push_back({x, t2});
      if (!in[t2]) {
        in[t2] = 1;
        stack.push_back(t2);
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

bool TeccIndex::same_component(const AdjacencyGraph& g, Edge e1, Edge e2) const {
  check_edge(g, e2.first, e2.second);
  auto edges = component_edges(g, e1.first, e1.second);
  return std::binary_search(edges.begin(), edges.end(), norm_edge(e2.first, e2.second));
}

void TeccIndex::serialize(ByteWriter& w) const {
  idx_.serialize(w);
  y_.serialize(w);
}

TeccIndex TeccIndex::deserialize(ByteReader& r) {
  TeccIndex idx;
  idx.idx_ = DfsIndex::deserialize(r);
  idx.y_ = PlainBitvector::deserialize(r);
  return idx;
}

}  // namespace dfsidx
