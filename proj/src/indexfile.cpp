#include "dfsidx/indexfile.hpp"

#include <cstring>
#include <fstream>
#include <functional>

namespace dfsidx {

namespace {
constexpr char kMagic[8] = {'D', 'F', 'S', 'I', 'D', 'X', '0', '1'};
}

const std::vector<uint8_t>& IndexFile::section(uint32_t id) const {
  for (const auto& [sid, bytes] : sections)
    if (sid == id) return bytes;
  throw std::runtime_error("index file: missing section " + std::to_string(id));
}

std::vector<uint8_t> IndexFile::to_bytes() const {
  ByteWriter w;
  w.bytes(kMagic, 8);
  w.u32(header.version);
  w.u8(uint8_t(header.model));
  w.u32(header.n);
  w.u64(header.m);
  w.u8(header.directed ? 1 : 0);
  w.u32(header.source);
  w.u8(header.mode);
  w.u32(header.epsilon_milli);
  w.u32(uint32_t(sections.size()));
  // Offsets are relative to the start of the file; payloads follow the table,
  // each section 8-byte aligned.
  uint64_t data_start = (w.size() + sections.size() * 20 + 7) / 8 * 8;
  uint64_t at = data_start;
  for (const auto& [id, bytes] : sections) {
    w.u32(id);
    w.u64(at);
    w.u64(bytes.size());
    at += (bytes.size() + 7) / 8 * 8;
  }
  w.pad_to(8);
  for (const auto& [id, bytes] : sections) {
    w.bytes(bytes.data(), bytes.size());
    w.pad_to(8);
  }
  uint64_t sum = fnv1a64(w.data().data(), w.size());
  w.u64(sum);
  return w.take();
}

IndexFile IndexFile::from_bytes(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < 8 + 27 + 8) throw std::runtime_error("index file: truncated");
  if (std::memcmp(bytes.data(), kMagic, 8) != 0)
    throw std::runtime_error("index file: bad magic");
  uint64_t body = bytes.size() - 8;
  uint64_t stored = 0;
  for (int i = 0; i < 8; ++i) stored |= uint64_t(bytes[body + i]) << (8 * i);
  if (fnv1a64(bytes.data(), body) != stored)
    throw std::runtime_error("index file: checksum mismatch");

  ByteReader r(bytes.data(), body);
  char magic[8];
  r.bytes(magic, 8);
  IndexFile f;
  f.header.version = r.u32();
  if (f.header.version != kVersion)
    throw std::runtime_error("index file: unsupported version " +
                             std::to_string(f.header.version));
  f.header.model = IndexModel(r.u8());
  f.header.n = r.u32();
  f.header.m = r.u64();
  f.header.directed = r.u8() != 0;
  f.header.source = r.u32();
  f.header.mode = r.u8();
  f.header.epsilon_milli = r.u32();
  uint32_t count = r.u32();
  struct Entry {
    uint32_t id;
    uint64_t off, len;
  };
  std::vector<Entry> entries(count);
  for (auto& e : entries) {
    e.id = r.u32();
    e.off = r.u64();
    e.len = r.u64();
    if (e.off > body || e.len > body - e.off)
      throw std::runtime_error("index file: section out of bounds");
  }
  for (const auto& e : entries)
    f.sections.push_back({e.id, std::vector<uint8_t>(bytes.begin() + long(e.off),
                                                     bytes.begin() + long(e.off + e.len))});
  return f;
}

void IndexFile::save(const std::string& path) const {
  auto bytes = to_bytes();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), long(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

IndexFile IndexFile::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open index file: " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  return from_bytes(bytes);
}

namespace {

std::vector<uint8_t> blob(const std::function<void(ByteWriter&)>& fn) {
  ByteWriter w;
  fn(w);
  return w.take();
}

IndexFile::Header make_header(IndexModel model, const AdjacencyGraph& g, uint32_t source,
                              uint8_t mode, uint32_t eps_milli) {
  IndexFile::Header h;
  h.model = model;
  h.n = g.num_vertices();
  h.m = g.num_edges();
  h.directed = g.directed();
  h.source = source;
  h.mode = mode;
  h.epsilon_milli = eps_milli;
  return h;
}

}  // namespace

IndexFile pack_dfs_index(const DfsIndex& idx, const AdjacencyGraph& g) {
  IndexFile f;
  f.header = make_header(IndexModel::Indexing, g, idx.source(), idx.compressed() ? 1 : 0, 0);
  const TreeBits& b = idx.bits();
  f.sections.push_back({SEC_META, blob([&](ByteWriter& w) {
                          w.u32(idx.source());
                          w.u8(idx.directed() ? 1 : 0);
                          b.serialize_meta(w);
                        })});
  f.sections.push_back({SEC_D, blob([&](ByteWriter& w) { b.serialize_d(w); })});
  f.sections.push_back({SEC_E, blob([&](ByteWriter& w) { b.serialize_e(w); })});
  f.sections.push_back({SEC_P, blob([&](ByteWriter& w) { b.serialize_p(w); })});
  f.sections.push_back({SEC_DT, blob([&](ByteWriter& w) { b.serialize_dt(w); })});
  f.sections.push_back({SEC_COVER, blob([&](ByteWriter& w) { idx.cover().serialize(w); })});
  return f;
}

DfsIndex unpack_dfs_index(const IndexFile& f) {
  ByteReader meta(f.section(SEC_META));
  uint32_t source = meta.u32();
  uint8_t directed = meta.u8();
  ByteReader d(f.section(SEC_D)), e(f.section(SEC_E)), p(f.section(SEC_P)),
      dt(f.section(SEC_DT)), cover(f.section(SEC_COVER));
  // Reassemble through the single-blob layout.
  ByteWriter all;
  all.u32(source);
  all.u8(directed);
  TreeBits bits = TreeBits::from_sections(meta, d, e, p, dt);
  bits.serialize(all);
  CoverIndex cov = CoverIndex::deserialize(cover);
  cov.serialize(all);
  ByteReader rr(all.data().data(), all.size());
  return DfsIndex::deserialize(rr);
}

IndexFile pack_enc_index(const EncIndex& idx, const AdjacencyGraph& g) {
  IndexFile f;
  f.header = make_header(IndexModel::Encoding, g, idx.source(), 0,
                         uint32_t(idx.epsilon() * 1000.0 + 0.5));
  f.sections.push_back({SEC_META, blob([&](ByteWriter& w) { w.u32(idx.n()); })});
  f.sections.push_back({SEC_PERM, blob([&](ByteWriter& w) { idx.serialize(w); })});
  return f;
}

EncIndex unpack_enc_index(const IndexFile& f) {
  ByteReader r(f.section(SEC_PERM));
  return EncIndex::deserialize(r);
}

namespace {
template <typename T>
IndexFile pack_app(IndexModel model, const T& idx, const AdjacencyGraph& g, uint32_t source) {
  IndexFile f;
  f.header = make_header(model, g, source, 0, 0);
  f.sections.push_back({SEC_APP, blob([&](ByteWriter& w) { idx.serialize(w); })});
  return f;
}
template <typename T>
T unpack_app(const IndexFile& f, IndexModel expect) {
  if (f.header.model != expect) throw std::runtime_error("index file: unexpected model");
  ByteReader r(f.section(SEC_APP));
  return T::deserialize(r);
}
}  // namespace

IndexFile pack_sp_index(const SpIndex& idx, const AdjacencyGraph& g) {
  return pack_app(IndexModel::ShortestPath, idx, g, idx.source());
}
SpIndex unpack_sp_index(const IndexFile& f) {
  return unpack_app<SpIndex>(f, IndexModel::ShortestPath);
}
IndexFile pack_conn_index(const ConnIndex& idx, const AdjacencyGraph& g) {
  return pack_app(IndexModel::Connectivity, idx, g, 0);
}
ConnIndex unpack_conn_index(const IndexFile& f) {
  return unpack_app<ConnIndex>(f, IndexModel::Connectivity);
}
IndexFile pack_scc_index(const SccIndex& idx, const AdjacencyGraph& g) {
  return pack_app(IndexModel::Scc, idx, g, 0);
}
SccIndex unpack_scc_index(const IndexFile& f) { return unpack_app<SccIndex>(f, IndexModel::Scc); }
IndexFile pack_bicon_index(const BiconIndex& idx, const AdjacencyGraph& g) {
  return pack_app(IndexModel::Biconnectivity, idx, g, 1);
}
BiconIndex unpack_bicon_index(const IndexFile& f) {
  return unpack_app<BiconIndex>(f, IndexModel::Biconnectivity);
}
IndexFile pack_tecc_index(const TeccIndex& idx, const AdjacencyGraph& g) {
  return pack_app(IndexModel::TwoEdge, idx, g, 1);
}
TeccIndex unpack_tecc_index(const IndexFile& f) {
  return unpack_app<TeccIndex>(f, IndexModel::TwoEdge);
}

}  // namespace dfsidx
