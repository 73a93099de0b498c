#pragma once

// Reference implementations the tests check against. Everything here is
// deliberately naive and independent of the library's query paths.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "dfsidx/graph.hpp"
#include "dfsidx/lexdfs.hpp"

namespace oracle {

using dfsidx::AdjacencyGraph;
using dfsidx::Vertex;

// --- bit vectors -----------------------------------------------------------

inline uint64_t naive_rank(const std::vector<bool>& bits, bool symbol, uint64_t i) {
  uint64_t c = 0;
  for (uint64_t k = 0; k < i; ++k) c += bits[k] == symbol;
  return c;
}

inline uint64_t naive_select(const std::vector<bool>& bits, bool symbol, uint64_t j) {
  uint64_t c = 0;
  for (uint64_t k = 0; k < bits.size(); ++k)
    if (bits[k] == symbol && ++c == j) return k + 1;
  return 0;
}

// --- recursive lex-DFS (small n only) ---------------------------------------

inline void rec_lexdfs(const AdjacencyGraph& g, Vertex v, std::vector<uint32_t>& dfi,
                       std::vector<Vertex>& parent, uint32_t& next) {
  dfi[v] = next++;
  for (uint32_t j = 1; j <= g.out_degree(v); ++j) {
    Vertex u = g.neighbor(v, j);
    if (dfi[u] == 0) {
      parent[u] = v;
      rec_lexdfs(g, u, dfi, parent, next);
    }
  }
}

// --- shortest paths ----------------------------------------------------------

inline std::vector<uint64_t> naive_dijkstra(const AdjacencyGraph& g, Vertex s) {
  const uint64_t inf = ~uint64_t(0);
  Vertex n = g.num_vertices();
  std::vector<uint64_t> dist(size_t(n) + 1, inf);
  std::vector<uint8_t> done(size_t(n) + 1, 0);
  dist[s] = 0;
  for (Vertex it = 1; it <= n; ++it) {
    Vertex best = 0;
    for (Vertex v = 1; v <= n; ++v)
      if (!done[v] && dist[v] != inf && (best == 0 || dist[v] < dist[best])) best = v;
    if (best == 0) break;
    done[best] = 1;
    for (uint32_t j = 1; j <= g.out_degree(best); ++j) {
      Vertex u = g.neighbor(best, j);
      uint64_t w = g.weight_at(best, j);
      if (dist[best] + w < dist[u]) dist[u] = dist[best] + w;
    }
  }
  return dist;
}

// --- union-find --------------------------------------------------------------

struct Dsu {
  std::vector<Vertex> p;
  explicit Dsu(Vertex n) : p(size_t(n) + 1) {
    for (Vertex v = 0; v <= n; ++v) p[v] = v;
  }
  Vertex find(Vertex v) { return p[v] == v ? v : p[v] = find(p[v]); }
  void join(Vertex a, Vertex b) { p[find(a)] = find(b); }
};

inline Dsu components(const AdjacencyGraph& g) {
  Dsu d(g.num_vertices());
  for (Vertex v = 1; v <= g.num_vertices(); ++v)
    for (Vertex u : g.out_neighbors(v)) d.join(v, u);
  return d;
}

// --- strongly connected components (Tarjan) ----------------------------------

inline std::vector<uint32_t> tarjan_scc(const AdjacencyGraph& g) {
  Vertex n = g.num_vertices();
  std::vector<uint32_t> comp(size_t(n) + 1, 0), idx(size_t(n) + 1, 0), low(size_t(n) + 1, 0);
  std::vector<uint8_t> on_stack(size_t(n) + 1, 0);
  std::vector<Vertex> stk;
  uint32_t next = 0, ncomp = 0;

  struct Frame {
    Vertex v;
    uint32_t child;
  };
  for (Vertex s = 1; s <= n; ++s) {
    if (idx[s]) continue;
    std::vector<Frame> frames{{s, 0}};
    idx[s] = low[s] = ++next;
    stk.push_back(s);
    on_stack[s] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < g.out_degree(f.v)) {
        Vertex u = g.neighbor(f.v, ++f.child);
        if (!idx[u]) {
          idx[u] = low[u] = ++next;
          stk.push_back(u);
          on_stack[u] = 1;
          frames.push_back({u, 0});
        } else if (on_stack[u]) {
          low[f.v] = std::min(low[f.v], idx[u]);
        }
      } else {
        if (low[f.v] == idx[f.v]) {
          ++ncomp;
          for (;;) {
            Vertex w = stk.back();
            stk.pop_back();
            on_stack[w] = 0;
            comp[w] = ncomp;
            if (w == f.v) break;
          }
        }
        Vertex done = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[done]);
      }
    }
  }
  return comp;
}

// --- biconnectivity (iterative Tarjan) ----------------------------------------

struct BiconOracle {
  std::vector<uint8_t> is_cut;
  std::vector<std::vector<std::pair<Vertex, Vertex>>> blocks;  // normalized edges, sorted
  std::map<std::pair<Vertex, Vertex>, uint32_t> block_of;
  std::vector<std::pair<Vertex, Vertex>> bridges;
};

inline BiconOracle bicon_oracle(const AdjacencyGraph& g) {
  Vertex n = g.num_vertices();
  BiconOracle out;
  out.is_cut.assign(size_t(n) + 1, 0);
  std::vector<uint32_t> num(size_t(n) + 1, 0), low(size_t(n) + 1, 0);
  std::vector<Vertex> parent(size_t(n) + 1, 0);
  std::vector<std::pair<Vertex, Vertex>> estk;
  uint32_t next = 0;

  auto norm = [](Vertex a, Vertex b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  struct Frame {
    Vertex v;
    uint32_t slot;
  };
  for (Vertex s = 1; s <= n; ++s) {
    if (num[s]) continue;
    uint32_t root_children = 0;
    std::vector<Frame> frames{{s, 0}};
    num[s] = low[s] = ++next;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.slot < g.out_degree(f.v)) {
        Vertex u = g.neighbor(f.v, ++f.slot);
        if (!num[u]) {
          estk.push_back(norm(f.v, u));
          parent[u] = f.v;
          num[u] = low[u] = ++next;
          frames.push_back({u, 0});
        } else if (u != parent[f.v] && num[u] < num[f.v]) {
          estk.push_back(norm(f.v, u));
          low[f.v] = std::min(low[f.v], num[u]);
        }
      } else {
        Vertex v = f.v;
        frames.pop_back();
        if (frames.empty()) break;
        Vertex p = frames.back().v;
        low[p] = std::min(low[p], low[v]);
        if (p == s) ++root_children;
        if (low[v] >= num[p]) {
          if (p != s) out.is_cut[p] = 1;
          std::vector<std::pair<Vertex, Vertex>> block;
          for (;;) {
            auto e = estk.back();
            estk.pop_back();
            block.push_back(e);
            if (e == norm(p, v)) break;
          }
          std::sort(block.begin(), block.end());
          uint32_t id = uint32_t(out.blocks.size());
          for (auto& e : block) out.block_of[e] = id;
          if (block.size() == 1) out.bridges.push_back(block.front());
          out.blocks.push_back(std::move(block));
        }
        if (low[v] > num[p]) {
          // bridge (p, v); already captured as a single-edge block unless the
          // block popped larger, which cannot happen when low[v] > num[p].
        }
      }
    }
    if (root_children >= 2) out.is_cut[s] = 1;
  }
  return out;
}

// Bridges via the block decomposition: a block with a single edge is a bridge.
inline std::set<std::pair<Vertex, Vertex>> bridge_set(const AdjacencyGraph& g) {
  auto bo = bicon_oracle(g);
  return {bo.bridges.begin(), bo.bridges.end()};
}

// 2-edge-connected classes: flood avoiding bridges; bridges are singletons.
struct TeccOracle {
  std::vector<uint32_t> class_of_vertex;  // bridge-free flooding classes
  std::set<std::pair<Vertex, Vertex>> bridges;
};

inline TeccOracle tecc_oracle(const AdjacencyGraph& g) {
  TeccOracle out;
  out.bridges = bridge_set(g);
  Vertex n = g.num_vertices();
  out.class_of_vertex.assign(size_t(n) + 1, 0);
  uint32_t next = 0;
  for (Vertex s = 1; s <= n; ++s) {
    if (out.class_of_vertex[s]) continue;
    ++next;
    std::vector<Vertex> stack{s};
    out.class_of_vertex[s] = next;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex u : g.out_neighbors(v)) {
        if (out.bridges.count({std::min(u, v), std::max(u, v)})) continue;
        if (!out.class_of_vertex[u]) {
          out.class_of_vertex[u] = next;
          stack.push_back(u);
        }
      }
    }
  }
  return out;
}

// --- pointer-tree navigation (for the succinct tree) -------------------------

struct PointerTree {
  std::vector<uint32_t> parent, depth;                 // by preorder rank
  std::vector<std::vector<uint32_t>> children;
  explicit PointerTree(const dfsidx::DfsResult& t) {
    uint32_t m = t.reached();
    parent.assign(m + 1, 0);
    depth.assign(m + 1, 0);
    children.assign(m + 1, {});
    for (Vertex v : t.order) {
      uint32_t pre = t.dfi[v];
      depth[pre] = t.depth[v];
      if (t.parent[v]) {
        parent[pre] = t.dfi[t.parent[v]];
        children[parent[pre]].push_back(pre);
      }
    }
  }
  uint32_t level_anc(uint32_t pre, uint32_t level) const {
    while (depth[pre] > level) pre = parent[pre];
    return pre;
  }
};

}  // namespace oracle
