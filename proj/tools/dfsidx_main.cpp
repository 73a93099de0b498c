// dfsidx: build compact DFS-tree indexes from graph files, run queries
// against them, report their size, and benchmark query latencies.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dfsidx/gen.hpp"
#include "dfsidx/indexfile.hpp"

using namespace dfsidx;

namespace {

// Exit codes: 0 success, 1 usage, 2 input error, 3 data corruption.
constexpr int kOk = 0, kUsage = 1, kInput = 2, kCorrupt = 3;

std::vector<Vertex> parse_args_list(const std::string& s) {
  std::vector<Vertex> out;
  std::string tok;
  std::istringstream ss(s);
  while (std::getline(ss, tok, ',')) {
    std::istringstream ts(tok);
    std::string word;
    while (ts >> word) out.push_back(Vertex(std::stoul(word)));
  }
  return out;
}

std::string canonical_op(std::string op) {
  // The numbered aliases follow the query numbering used in the docs.
  if (op == "1a") return "first_visited";
  if (op == "1b") return "is_ancestor";
  if (op == "2a") return "parent";
  if (op == "2b") return "num_children";
  if (op == "2c") return "children";
  if (op == "2d") return "dfi";
  if (op == "3") return "preorder";
  if (op == "4") return "vertex_at_dfi";
  return op;
}

void print_list(const std::vector<Vertex>& vs) {
  for (size_t i = 0; i < vs.size(); ++i) std::cout << (i ? " " : "") << vs[i];
  std::cout << "\n";
}

void print_edges(const std::vector<Edge>& es) {
  for (size_t i = 0; i < es.size(); ++i)
    std::cout << (i ? " " : "") << es[i].first << "-" << es[i].second;
  std::cout << "\n";
}

int cmd_build(const std::string& input, Vertex source, const std::string& model,
              const std::string& mode, double epsilon, const std::string& app,
              const std::string& out_path) {
  AdjacencyGraph g = load_graph_file(input);
  IndexFile f;
  if (app == "sp") {
    SpIndex idx = SpIndex::build(g, source);
    f = pack_sp_index(idx, g);
  } else if (app == "conn") {
    f = pack_conn_index(ConnIndex::build(g), g);
  } else if (app == "scc") {
    f = pack_scc_index(SccIndex::build(g), g);
  } else if (app == "bicon") {
    f = pack_bicon_index(BiconIndex::build(g), g);
  } else if (app == "tecc") {
    f = pack_tecc_index(TeccIndex::build(g), g);
  } else if (model == "encoding") {
    EncIndex idx = EncIndex::build(g, source, epsilon);
    f = pack_enc_index(idx, g);
    std::cout << "perm_bits=" << idx.perm().total_bits() << "\n"
              << "tree_bits=" << idx.tree().total_bits() << "\n"
              << "total_bits=" << idx.total_bits() << "\n";
  } else {
    BuildMode bm = mode == "plain"        ? BuildMode::Plain
                   : mode == "compressed" ? BuildMode::Compressed
                                          : BuildMode::Auto;
    DfsIndex idx = DfsIndex::build(g, source, bm);
    f = pack_dfs_index(idx, g);
    std::cout << idx.space_report().to_text();
  }
  f.save(out_path);
  return kOk;
}

int cmd_query(const std::string& index_path, const std::string& graph_path, std::string op,
              const std::string& args_str) {
  IndexFile f = IndexFile::load(index_path);
  op = canonical_op(op);
  std::vector<Vertex> args = parse_args_list(args_str);
  auto need = [&](size_t k) {
    if (args.size() != k)
      throw std::invalid_argument("op " + op + " expects " + std::to_string(k) + " argument(s)");
  };

  if (f.header.model == IndexModel::Encoding) {
    if (!graph_path.empty()) {
      std::cerr << "error: encoding model takes no graph\n";
      return kInput;
    }
    EncIndex idx = unpack_enc_index(f);
    if (op == "parent") {
      need(1);
      Vertex p = idx.parent(args[0]);
      if (p == kNoVertex)
        std::cout << "none\n";
      else
        std::cout << p << "\n";
    } else if (op == "num_children") {
      need(1);
      std::cout << idx.num_children(args[0]) << "\n";
    } else if (op == "children") {
      need(1);
      print_list(idx.children(args[0]));
    } else if (op == "dfi") {
      need(1);
      std::cout << idx.dfi(args[0]) << "\n";
    } else if (op == "first_visited") {
      need(2);
      std::cout << idx.first_visited(args[0], args[1]) << "\n";
    } else if (op == "is_ancestor") {
      need(2);
      std::cout << (idx.is_ancestor(args[0], args[1]) ? "true" : "false") << "\n";
    } else if (op == "preorder") {
      print_list(idx.preorder());
    } else if (op == "vertex_at_dfi") {
      need(1);
      std::cout << idx.vertex_at_dfi(args[0]) << "\n";
    } else {
      std::cerr << "error: unknown op for encoding model: " << op << "\n";
      return kUsage;
    }
    return kOk;
  }

  if (graph_path.empty()) {
    std::cerr << "error: this index model needs --graph\n";
    return kInput;
  }
  AdjacencyGraph g = load_graph_file(graph_path);

  switch (f.header.model) {
    case IndexModel::Indexing: {
      DfsIndex idx = unpack_dfs_index(f);
      if (op == "parent") {
        need(1);
        Vertex p = idx.parent(g, args[0]);
        if (p == kNoVertex)
          std::cout << "none\n";
        else
          std::cout << p << "\n";
      } else if (op == "num_children") {
        need(1);
        std::cout << idx.num_children(args[0]) << "\n";
      } else if (op == "children") {
        need(1);
        print_list(idx.children(g, args[0]));
      } else if (op == "dfi") {
        need(1);
        std::cout << idx.dfi(g, args[0]) << "\n";
      } else if (op == "first_visited") {
        need(2);
        std::cout << idx.first_visited(g, args[0], args[1]) << "\n";
      } else if (op == "is_ancestor") {
        need(2);
        std::cout << (idx.is_ancestor(g, args[0], args[1]) ? "true" : "false") << "\n";
      } else if (op == "subtree_size") {
        need(1);
        std::cout << idx.subtree_size(g, args[0]) << "\n";
      } else if (op == "preorder") {
        print_list(idx.preorder(g));
      } else if (op == "vertex_at_dfi") {
        need(1);
        std::cout << idx.vertex_at_dfi(g, args[0]) << "\n";
      } else {
        std::cerr << "error: unknown op for indexing model: " << op << "\n";
        return kUsage;
      }
      return kOk;
    }
    case IndexModel::ShortestPath: {
      SpIndex idx = unpack_sp_index(f);
      if (op == "sp_dist" || op == "dist") {
        need(1);
        std::cout << idx.dist(g, args[0]) << "\n";
      } else if (op == "sp_path" || op == "path") {
        need(1);
        print_list(idx.path(g, args[0]));
      } else {
        std::cerr << "error: unknown op for sp index: " << op << "\n";
        return kUsage;
      }
      return kOk;
    }
    case IndexModel::Connectivity: {
      ConnIndex idx = unpack_conn_index(f);
      if (op == "connected" || op == "conn") {
        need(2);
        std::cout << (idx.connected(g, args[0], args[1]) ? "true" : "false") << "\n";
      } else {
        std::cerr << "error: unknown op for conn index: " << op << "\n";
        return kUsage;
      }
      return kOk;
    }
    case IndexModel::Scc: {
      SccIndex idx = unpack_scc_index(f);
      if (op == "scc_same") {
        need(2);
        std::cout << (idx.same_component(g, args[0], args[1]) ? "true" : "false") << "\n";
      } else if (op == "scc_members") {
        need(1);
        auto ms = idx.members(g, args[0]);
        std::sort(ms.begin(), ms.end());
        print_list(ms);
      } else if (op == "scc_enumerate") {
        print_list(idx.component_roots());
      } else {
        std::cerr << "error: unknown op for scc index: " << op << "\n";
        return kUsage;
      }
      return kOk;
    }
    case IndexModel::Biconnectivity: {
      BiconIndex idx = unpack_bicon_index(f);
      if (op == "is_cut") {
        need(1);
        std::cout << (idx.is_cut(args[0]) ? "true" : "false") << "\n";
      } else if (op == "cut_list") {
        print_list(idx.cut_vertices());
      } else if (op == "bicon_edges") {
        need(2);
        print_edges(idx.component_edges(g, args[0], args[1]));
      } else if (op == "bicon_same") {
        need(4);
        std::cout << (idx.same_component(g, {args[0], args[1]}, {args[2], args[3]}) ? "true"
                                                                                    : "false")
                  << "\n";
      } else {
        std::cerr << "error: unknown op for bicon index: " << op << "\n";
        return kUsage;
      }
      return kOk;
    }
    case IndexModel::TwoEdge: {
      TeccIndex idx = unpack_tecc_index(f);
      if (op == "is_bridge") {
        need(2);
        std::cout << (idx.is_bridge(g, args[0], args[1]) ? "true" : "false") << "\n";
      } else if (op == "bridge_list") {
        print_edges(idx.bridges(g));
      } else if (op == "tecc_edges") {
        need(2);
        print_edges(idx.component_edges(g, args[0], args[1]));
      } else if (op == "tecc_same") {
        need(4);
        std::cout << (idx.same_component(g, {args[0], args[1]}, {args[2], args[3]}) ? "true"
                                                                                    : "false")
                  << "\n";
      } else {
        std::cerr << "error: unknown op for tecc index: " << op << "\n";
        return kUsage;
      }
      return kOk;
    }
    default:
      std::cerr << "error: unsupported model\n";
      return kInput;
  }
}

int cmd_stats(const std::string& index_path) {
  IndexFile f = IndexFile::load(index_path);
  uint64_t total = 0;
  for (const auto& [id, bytes] : f.sections) {
    const char* name = id == SEC_META    ? "meta"
                       : id == SEC_D     ? "D"
                       : id == SEC_E     ? "E"
                       : id == SEC_P     ? "P"
                       : id == SEC_DT    ? "D_T"
                       : id == SEC_COVER ? "cover"
                       : id == SEC_PERM  ? "perm"
                       : id == SEC_TREE  ? "tree"
                                         : "app";
    std::cout << "section_" << name << "_bits=" << bytes.size() * 8 << "\n";
    total += bytes.size() * 8;
  }
  if (f.header.model == IndexModel::Indexing) {
    DfsIndex idx = unpack_dfs_index(f);
    std::cout << idx.space_report().to_text();
    total = idx.space_report().total_bits;
  } else if (f.header.model == IndexModel::Encoding) {
    EncIndex idx = unpack_enc_index(f);
    std::cout << "perm_bits=" << idx.perm().total_bits() << "\n"
              << "tree_bits=" << idx.tree().total_bits() << "\n"
              << "total_bits=" << idx.total_bits() << "\n";
    total = idx.total_bits();
  }
  uint64_t n = f.header.n, m = f.header.m;
  double r1 = double(total) / double(n + m);
  double r2 = double(total) / (double(n) * std::max<uint32_t>(1, ceil_log2(n)));
  std::cout << "ratio_bits_per_nm=" << r1 << "\n";
  std::cout << "ratio_vs_nlgn=" << r2 << "\n";
  return kOk;
}

// Median wall time per call over `count` calls of `fn`.
template <typename F>
double median_ns(uint32_t count, F&& fn) {
  std::vector<double> samples;
  samples.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    fn(i);
    auto t1 = std::chrono::steady_clock::now();
    samples.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

int cmd_bench(const std::vector<uint64_t>& sizes, double density, uint32_t queries,
              uint64_t seed) {
  std::cout << "size\tmodel\tquery\tmedian_ns\tbits\n";
  for (uint64_t n : sizes) {
    uint64_t m = uint64_t(density * double(n));
    AdjacencyGraph g = gen_connected_undirected(Vertex(n), m, seed);
    DfsIndex ind = DfsIndex::build(g, 1);
    EncIndex enc = EncIndex::build(g, 1, 0.25);
    Rng rng(seed ^ 0xbeefull);
    std::vector<Vertex> vs(queries);
    std::vector<Vertex> us(queries);
    std::vector<uint32_t> is(queries);
    uint32_t reach = ind.reached_count();
    for (uint32_t i = 0; i < queries; ++i) {
      vs[i] = Vertex(rng.below(n) + 1);
      us[i] = Vertex(rng.below(n) + 1);
      is[i] = uint32_t(rng.below(reach) + 1);
    }
    volatile uint64_t sink = 0;
    uint64_t ind_bits = ind.space_report().total_bits;
    uint64_t enc_bits = enc.total_bits();

    auto row = [&](const char* model, const char* q, double ns, uint64_t bits) {
      std::cout << n << "\t" << model << "\t" << q << "\t" << uint64_t(ns) << "\t" << bits
                << "\n";
    };
    row("indexing", "1a", median_ns(queries, [&](uint32_t i) { sink = sink + ind.first_visited(g, vs[i], us[i]); }), ind_bits);
    row("indexing", "1b", median_ns(queries, [&](uint32_t i) { sink = sink + ind.is_ancestor(g, vs[i], us[i]); }), ind_bits);
    row("indexing", "2a", median_ns(queries, [&](uint32_t i) { sink = sink + ind.parent(g, vs[i]); }), ind_bits);
    row("indexing", "2b", median_ns(queries, [&](uint32_t i) { sink = sink + ind.num_children(vs[i]); }), ind_bits);
    row("indexing", "2c", median_ns(queries, [&](uint32_t i) { sink = sink + ind.children(g, vs[i]).size(); }), ind_bits);
    row("indexing", "2d", median_ns(queries, [&](uint32_t i) { sink = sink + ind.dfi(g, vs[i]); }), ind_bits);
    row("indexing", "3", median_ns(std::min<uint32_t>(queries, 4), [&](uint32_t) { sink = sink + ind.preorder(g).size(); }), ind_bits);
    row("indexing", "4", median_ns(queries, [&](uint32_t i) { sink = sink + ind.vertex_at_dfi(g, is[i]); }), ind_bits);
    row("encoding", "1a", median_ns(queries, [&](uint32_t i) { sink = sink + enc.first_visited(vs[i], us[i]); }), enc_bits);
    row("encoding", "1b", median_ns(queries, [&](uint32_t i) { sink = sink + enc.is_ancestor(vs[i], us[i]); }), enc_bits);
    row("encoding", "2a", median_ns(queries, [&](uint32_t i) { sink = sink + enc.parent(vs[i]); }), enc_bits);
    row("encoding", "2b", median_ns(queries, [&](uint32_t i) { sink = sink + enc.num_children(vs[i]); }), enc_bits);
    row("encoding", "2c", median_ns(queries, [&](uint32_t i) { sink = sink + enc.children(vs[i]).size(); }), enc_bits);
    row("encoding", "2d", median_ns(queries, [&](uint32_t i) { sink = sink + enc.dfi(vs[i]); }), enc_bits);
    row("encoding", "3", median_ns(std::min<uint32_t>(queries, 4), [&](uint32_t) { sink = sink + enc.preorder().size(); }), enc_bits);
    row("encoding", "4", median_ns(queries, [&](uint32_t i) { sink = sink + enc.vertex_at_dfi(is[i]); }), enc_bits);
    (void)sink;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compact DFS-tree indexes: build, query, stats, bench"};
  app.require_subcommand(1);

  std::string input, out_path, index_path, graph_path, op, args_str;
  std::string model = "indexing", mode = "auto", app_kind = "none";
  Vertex source = 1;
  double epsilon = 0.25;
  std::vector<uint64_t> sizes{1024};
  double density = 2.0;
  uint32_t queries = 1000;
  uint64_t seed = 1;

  auto* b = app.add_subcommand("build", "build an index from a graph file");
  b->add_option("--input", input)->required();
  b->add_option("--source", source);
  b->add_option("--model", model)->check(CLI::IsMember({"indexing", "encoding"}));
  b->add_option("--mode", mode)->check(CLI::IsMember({"auto", "plain", "compressed"}));
  b->add_option("--epsilon", epsilon);
  b->add_option("--app", app_kind)
      ->check(CLI::IsMember({"none", "sp", "conn", "scc", "bicon", "tecc"}));
  b->add_option("--out", out_path)->required();

  auto* q = app.add_subcommand("query", "run one query against an index");
  q->add_option("--index", index_path)->required();
  q->add_option("--graph", graph_path);
  q->add_option("--op", op)->required();
  q->add_option("--args", args_str);

  auto* s = app.add_subcommand("stats", "print per-section sizes and ratios");
  s->add_option("--index", index_path)->required();

  auto* be = app.add_subcommand("bench", "generate seeded graphs and time queries");
  be->add_option("--sizes", sizes);
  be->add_option("--density", density);
  be->add_option("--queries", queries);
  be->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kUsage : kOk;
  }

  try {
    if (b->parsed()) return cmd_build(input, source, model, mode, epsilon, app_kind, out_path);
    if (q->parsed()) return cmd_query(index_path, graph_path, op, args_str);
    if (s->parsed()) return cmd_stats(index_path);
    if (be->parsed()) return cmd_bench(sizes, density, queries, seed);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCorrupt;
  }
  return kUsage;
}
