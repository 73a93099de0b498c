#include "dfsidx/lexdfs.hpp"

#include <algorithm>

namespace dfsidx {

namespace {

// Shared stack-based traversal. `reversed` walks in-neighbor arrays.
void run_from(const AdjacencyGraph& g, Vertex start, bool reversed, DfsResult& r,
              std::vector<uint32_t>& cursor, uint32_t& next_dfi) {
  if (r.dfi[start] != 0) return;
  auto degree = [&](Vertex v) { return reversed ? g.in_degree(v) : g.out_degree(v); };
  auto nbr = [&](Vertex v, uint32_t j) { return reversed ? g.in_neighbor(v, j) : g.neighbor(v, j); };

  std::vector<Vertex> stack;
  r.dfi[start] = next_dfi++;
  r.order.push_back(start);
  stack.push_back(start);
  while (!stack.empty()) {
    Vertex v = stack.back();
    bool advanced = false;
    while (cursor[v] < degree(v)) {
      uint32_t j = ++cursor[v];
      Vertex w = nbr(v, j);
      if (r.dfi[w] != 0) continue;
      r.dfi[w] = next_dfi++;
      r.order.push_back(w);
      r.parent[w] = v;
      r.children[v].push_back(w);
      r.child_slot_in_parent[w] = j;
      r.parent_slot_in_child[w] = reversed ? g.find_out_slot(w, v) : g.find_in_slot(w, v);
      r.depth[w] = r.depth[v] + 1;
      stack.push_back(w);
      advanced = true;
      break;
    }
    if (!advanced) stack.pop_back();
  }
}

void fill_subtree_sizes(DfsResult& r) {
  r.subtree_size.assign(size_t(r.n) + 1, 0);
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
    Vertex v = *it;
    uint32_t s = 1;
    for (Vertex c : r.children[v]) s += r.subtree_size[c];
    r.subtree_size[v] = s;
  }
}

DfsResult fresh_result(const AdjacencyGraph& g) {
  DfsResult r;
  r.n = g.num_vertices();
  r.parent.assign(size_t(r.n) + 1, 0);
  r.dfi.assign(size_t(r.n) + 1, 0);
  r.children.assign(size_t(r.n) + 1, {});
  r.depth.assign(size_t(r.n) + 1, 0);
  r.child_slot_in_parent.assign(size_t(r.n) + 1, 0);
  r.parent_slot_in_child.assign(size_t(r.n) + 1, 0);
  r.order.reserve(r.n);
  return r;
}

DfsResult run_forest(const AdjacencyGraph& g, const std::vector<Vertex>& starts, bool reversed) {
  DfsResult r = fresh_result(g);
  std::vector<uint32_t> cursor(size_t(r.n) + 1, 0);
  uint32_t next_dfi = 1;
  for (Vertex s : starts) {
    g.check_vertex(s);
    if (r.dfi[s] == 0) {
      r.roots.push_back(s);
      run_from(g, s, reversed, r, cursor, next_dfi);
    }
  }
  fill_subtree_sizes(r);
  return r;
}

}  // namespace

DfsResult lex_dfs(const AdjacencyGraph& g, Vertex source) {
  g.check_vertex(source);
  DfsResult r = fresh_result(g);
  r.source = source;
  r.roots.push_back(source);
  std::vector<uint32_t> cursor(size_t(r.n) + 1, 0);
  uint32_t next_dfi = 1;
  run_from(g, source, false, r, cursor, next_dfi);
  fill_subtree_sizes(r);
  return r;
}

DfsResult lex_dfs_forest(const AdjacencyGraph& g, const std::vector<Vertex>& starts) {
  return run_forest(g, starts, false);
}

DfsResult lex_dfs_forest_reversed(const AdjacencyGraph& g, const std::vector<Vertex>& starts) {
  if (!g.directed()) throw std::invalid_argument("reversed traversal needs a directed graph");
  return run_forest(g, starts, true);
}

std::vector<Vertex> finish_order_descending(const AdjacencyGraph& g) {
  Vertex n = g.num_vertices();
  std::vector<Vertex> finish;  // vertices in increasing finish time
  finish.reserve(n);
  std::vector<uint32_t> cursor(size_t(n) + 1, 0);
  std::vector<uint8_t> seen(size_t(n) + 1, 0);
  std::vector<Vertex> stack;
  for (Vertex s = 1; s <= n; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      bool advanced = false;
      while (cursor[v] < g.out_degree(v)) {
        Vertex w = g.neighbor(v, ++cursor[v]);
        if (seen[w]) continue;
        seen[w] = 1;
        stack.push_back(w);
        advanced = true;
        break;
      }
      if (!advanced) {
        finish.push_back(v);
        stack.pop_back();
      }
    }
  }
  std::reverse(finish.begin(), finish.end());
  return finish;
}

}  // namespace dfsidx
