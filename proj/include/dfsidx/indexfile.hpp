#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dfsidx/apps.hpp"
#include "dfsidx/dfsindex.hpp"
#include "dfsidx/encindex.hpp"

namespace dfsidx {

// On-disk container: magic, fixed header, section table, section payloads,
// trailing checksum of everything before it. All integers little-endian,
// section payloads padded to 8 bytes. Loading verifies magic, version,
// section bounds, and the checksum.
enum class IndexModel : uint8_t {
  Indexing = 0,
  Encoding = 1,
  ShortestPath = 2,
  Connectivity = 3,
  Scc = 4,
  Biconnectivity = 5,
  TwoEdge = 6,
};

enum SectionId : uint32_t {
  SEC_META = 1,
  SEC_D = 2,
  SEC_E = 3,
  SEC_P = 4,
  SEC_DT = 5,
  SEC_COVER = 6,
  SEC_PERM = 7,
  SEC_TREE = 8,
  SEC_APP = 9,
};

struct IndexFile {
  static constexpr uint32_t kVersion = 1;

  struct Header {
    uint32_t version = kVersion;
    IndexModel model = IndexModel::Indexing;
    uint32_t n = 0;
    uint64_t m = 0;
    bool directed = false;
    uint32_t source = 0;
    uint8_t mode = 0;  // 0 plain, 1 compressed
    uint32_t epsilon_milli = 0;
  };

  Header header;
  std::vector<std::pair<uint32_t, std::vector<uint8_t>>> sections;

  const std::vector<uint8_t>& section(uint32_t id) const;
  uint64_t section_bits(uint32_t id) const { return section(id).size() * 8; }

  std::vector<uint8_t> to_bytes() const;
  static IndexFile from_bytes(const std::vector<uint8_t>& bytes);

  void save(const std::string& path) const;
  static IndexFile load(const std::string& path);
};

// Model packing. The graph edge count and flags ride in the header so stats
// can report ratios without the graph.
IndexFile pack_dfs_index(const DfsIndex& idx, const AdjacencyGraph& g);
DfsIndex unpack_dfs_index(const IndexFile& f);
IndexFile pack_enc_index(const EncIndex& idx, const AdjacencyGraph& g);
EncIndex unpack_enc_index(const IndexFile& f);

IndexFile pack_sp_index(const SpIndex& idx, const AdjacencyGraph& g);
SpIndex unpack_sp_index(const IndexFile& f);
IndexFile pack_conn_index(const ConnIndex& idx, const AdjacencyGraph& g);
ConnIndex unpack_conn_index(const IndexFile& f);
IndexFile pack_scc_index(const SccIndex& idx, const AdjacencyGraph& g);
SccIndex unpack_scc_index(const IndexFile& f);
IndexFile pack_bicon_index(const BiconIndex& idx, const AdjacencyGraph& g);
BiconIndex unpack_bicon_index(const IndexFile& f);
IndexFile pack_tecc_index(const TeccIndex& idx, const AdjacencyGraph& g);
TeccIndex unpack_tecc_index(const IndexFile& f);

}  // namespace dfsidx
