#include "dfsidx/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace dfsidx {

AdjacencyGraph::AdjacencyGraph(Vertex n, bool directed, bool weighted)
    : n_(n), directed_(directed), weighted_(weighted) {
  out_adj_.resize(size_t(n) + 1);
  if (directed) in_adj_.resize(size_t(n) + 1);
  if (weighted) {
    out_w_.resize(size_t(n) + 1);
    if (directed) in_w_.resize(size_t(n) + 1);
  }
}

void AdjacencyGraph::add_arc(Vertex from, Vertex to, uint64_t w) {
  out_adj_[from].push_back(to);
  if (weighted_) out_w_[from].push_back(w);
}

void AdjacencyGraph::add_in_arc(Vertex at, Vertex from, uint64_t w) {
  in_adj_[at].push_back(from);
  if (weighted_) in_w_[at].push_back(w);
}

void AdjacencyGraph::freeze() {
  flat_out_.clear();
  flat_in_.clear();
  uint64_t total = 0;
  for (Vertex v = 1; v <= n_; ++v) total += out_adj_[v].size();
  flat_out_.reserve(total);
  for (Vertex v = 1; v <= n_; ++v)
    flat_out_.insert(flat_out_.end(), out_adj_[v].begin(), out_adj_[v].end());
  if (directed_) {
    total = 0;
    for (Vertex v = 1; v <= n_; ++v) total += in_adj_[v].size();
    flat_in_.reserve(total);
    for (Vertex v = 1; v <= n_; ++v)
      flat_in_.insert(flat_in_.end(), in_adj_[v].begin(), in_adj_[v].end());
  }
}

uint32_t AdjacencyGraph::find_out_slot(Vertex v, Vertex u) const {
  check_vertex(v);
  for (size_t j = 0; j < out_adj_[v].size(); ++j)
    if (out_adj_[v][j] == u) return uint32_t(j + 1);
  throw std::invalid_argument("find_out_slot: vertex not adjacent");
}

uint32_t AdjacencyGraph::find_in_slot(Vertex v, Vertex u) const {
  check_vertex(v);
  const auto& arr = in_side(v);
  for (size_t j = 0; j < arr.size(); ++j)
    if (arr[j] == u) return uint32_t(j + 1);
  throw std::invalid_argument("find_in_slot: vertex not adjacent");
}

std::vector<std::string> AdjacencyGraph::validate() const {
  std::vector<std::string> bad;
  uint64_t total_out = 0, total_in = 0;
  for (Vertex v = 1; v <= n_; ++v) {
    total_out += out_adj_[v].size();
    std::set<Vertex> seen;
    for (Vertex u : out_adj_[v]) {
      if (u == v) bad.push_back("self-loop at vertex " + std::to_string(v));
      if (!seen.insert(u).second)
        bad.push_back("parallel edge " + std::to_string(v) + "-" + std::to_string(u));
    }
  }
  if (!directed_) {
    if (total_out != 2 * m_)
      bad.push_back("degree sum " + std::to_string(total_out) + " != 2m");
    for (Vertex v = 1; v <= n_; ++v)
      for (size_t j = 0; j < out_adj_[v].size(); ++j) {
        Vertex u = out_adj_[v][j];
        auto it = std::find(out_adj_[u].begin(), out_adj_[u].end(), v);
        if (it == out_adj_[u].end()) {
          bad.push_back("asymmetric edge " + std::to_string(v) + "-" + std::to_string(u));
        } else if (weighted_) {
          size_t k = size_t(it - out_adj_[u].begin());
          if (out_w_[u][k] != out_w_[v][j])
            bad.push_back("weight mismatch on edge " + std::to_string(v) + "-" + std::to_string(u));
        }
      }
  } else {
    for (Vertex v = 1; v <= n_; ++v) total_in += in_adj_[v].size();
    if (total_out != m_) bad.push_back("out-degree sum != m");
    if (total_in != m_) bad.push_back("in-degree sum != m");
    for (Vertex v = 1; v <= n_; ++v)
      for (size_t j = 0; j < out_adj_[v].size(); ++j) {
        Vertex u = out_adj_[v][j];
        auto it = std::find(in_adj_[u].begin(), in_adj_[u].end(), v);
        if (it == in_adj_[u].end()) {
          bad.push_back("arc " + std::to_string(v) + "->" + std::to_string(u) +
                        " missing from in-adjacency");
        } else if (weighted_) {
          size_t k = size_t(it - in_adj_[u].begin());
          if (in_w_[u][k] != out_w_[v][j])
            bad.push_back("weight mismatch on arc " + std::to_string(v) + "->" + std::to_string(u));
        }
      }
  }
  return bad;
}

namespace {

struct LineSource {
  std::istream& in;
  uint64_t line_no = 0;
  // Returns the next non-comment line. Blank lines are data.
  bool next(std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      if (!out.empty() && out.back() == '\r') out.pop_back();
      size_t first = out.find_first_not_of(" \t");
      if (first != std::string::npos && out[first] == '#') continue;
      return true;
    }
    return false;
  }
};

void parse_neighbor_token(const std::string& tok, uint64_t line, bool weighted, Vertex n,
                          Vertex& v, uint64_t& w) {
  size_t colon = tok.find(':');
  std::string vs = tok.substr(0, colon);
  char* end = nullptr;
  long long val = std::strtoll(vs.c_str(), &end, 10);
  if (end == vs.c_str() || *end != '\0') throw ParseError(line, "bad vertex id '" + vs + "'");
  if (val < 1 || uint64_t(val) > n) throw ParseError(line, "vertex id out of range: " + vs);
  v = Vertex(val);
  w = 1;
  if (colon != std::string::npos) {
    if (!weighted) throw ParseError(line, "weight given but header is not 'weighted'");
    std::string ws = tok.substr(colon + 1);
    long long wv = std::strtoll(ws.c_str(), &end, 10);
    if (end == ws.c_str() || *end != '\0') throw ParseError(line, "bad weight '" + ws + "'");
    if (wv < 0) throw ParseError(line, "negative weight");
    w = uint64_t(wv);
  } else if (weighted) {
    throw ParseError(line, "missing weight on neighbor " + vs);
  }
}

}  // namespace

AdjacencyGraph parse_graph(std::istream& in) {
  LineSource src{in};
  std::string line;
  if (!src.next(line)) throw ParseError(src.line_no, "missing header");
  std::istringstream hdr(line);
  long long n = -1, m = -1;
  std::string kind, flag;
  hdr >> n >> m >> kind;
  if (hdr.fail() || n < 0 || m < 0 || (kind != "directed" && kind != "undirected"))
    throw ParseError(src.line_no, "malformed header, expected 'n m directed|undirected [weighted]'");
  bool weighted = false;
  if (hdr >> flag) {
    if (flag != "weighted") throw ParseError(src.line_no, "unknown header flag '" + flag + "'");
    weighted = true;
  }
  bool directed = kind == "directed";
  AdjacencyGraph g(Vertex(n), directed, weighted);
  g.set_edge_count(uint64_t(m));

  for (Vertex v = 1; v <= Vertex(n); ++v) {
    if (!src.next(line)) throw ParseError(src.line_no + 1, "unexpected end of adjacency block");
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      Vertex u;
      uint64_t w;
      parse_neighbor_token(tok, src.line_no, weighted, Vertex(n), u, w);
      if (u == v) throw ParseError(src.line_no, "self-loop at vertex " + std::to_string(v));
      g.add_arc(v, u, w);
    }
  }
  if (directed) {
    if (!src.next(line) || line != "--")
      throw ParseError(src.line_no, "expected '--' separator before in-neighbor block");
    for (Vertex v = 1; v <= Vertex(n); ++v) {
      if (!src.next(line)) throw ParseError(src.line_no + 1, "unexpected end of in-neighbor block");
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) {
        Vertex u;
        uint64_t w;
        parse_neighbor_token(tok, src.line_no, weighted, Vertex(n), u, w);
        g.add_in_arc(v, u, w);
      }
    }
  }

  auto bad = g.validate();
  if (!bad.empty()) throw ParseError(src.line_no, "invalid graph: " + bad.front());
  g.freeze();
  return g;
}

AdjacencyGraph parse_graph_text(const std::string& text) {
  std::istringstream ss(text);
  return parse_graph(ss);
}

AdjacencyGraph load_graph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open graph file: " + path);
  return parse_graph(f);
}

std::string AdjacencyGraph::serialize_text() const {
  std::ostringstream out;
  out << n_ << ' ' << m_ << ' ' << (directed_ ? "directed" : "undirected");
  if (weighted_) out << " weighted";
  out << '\n';
  auto block = [&](const std::vector<std::vector<Vertex>>& adj,
                   const std::vector<std::vector<uint64_t>>& ws) {
    for (Vertex v = 1; v <= n_; ++v) {
      for (size_t j = 0; j < adj[v].size(); ++j) {
        if (j) out << ' ';
        out << adj[v][j];
        if (weighted_) out << ':' << ws[v][j];
      }
      out << '\n';
    }
  };
  block(out_adj_, out_w_);
  if (directed_) {
    out << "--\n";
    block(in_adj_, in_w_);
  }
  return out.str();
}

}  // namespace dfsidx
