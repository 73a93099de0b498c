#pragma once

#include <cstdint>
#include <vector>

#include "dfsidx/common.hpp"
#include "dfsidx/serialize.hpp"

namespace dfsidx {

// Growable bit sequence. Bit order is least-significant-bit-first within
// 64-bit words, fixed so serialized payloads are portable.
class BitString {
 public:
  BitString() = default;
  explicit BitString(uint64_t n_bits) : len_(n_bits), words_((n_bits + 63) / 64, 0) {}

  void append(bool bit) {
    if (len_ % 64 == 0) words_.push_back(0);
    if (bit) words_.back() |= uint64_t(1) << (len_ % 64);
    ++len_;
  }
  void append_run(bool bit, uint64_t k) {
    for (uint64_t i = 0; i < k; ++i) append(bit);  // TODO: word-at-a-time fill
  }
  void set(uint64_t pos) { words_[pos / 64] |= uint64_t(1) << (pos % 64); }
  bool get(uint64_t pos) const { return (words_[pos / 64] >> (pos % 64)) & 1; }

  uint64_t size() const { return len_; }
  const std::vector<uint64_t>& words() const { return words_; }
  std::vector<uint64_t>& words() { return words_; }

 private:
  uint64_t len_ = 0;
  std::vector<uint64_t> words_;
};

// Position of the k-th (1-based) set bit of a word; k <= popcount(w).
uint32_t select_in_word(uint64_t w, uint32_t k);

// Bitvector with rank/select directories. The public interface is 1-based:
// rank(i) counts symbols in the prefix [1, i], select(j) returns the 1-based
// position of the j-th occurrence. Immutable after construction.
//
// Directory layout: absolute counts per 512-bit superblock, 16-bit relative
// counts per 64-bit block, and sampled positions of every 4096-th occurrence
// of each symbol to seed select searches. Auxiliary storage stays below
// 0.5 bits per data bit.
class PlainBitvector {
 public:
  PlainBitvector() = default;
  explicit PlainBitvector(BitString bits);

  uint64_t size() const { return len_; }
  uint64_t ones() const { return ones_; }
  uint64_t zeros() const { return len_ - ones_; }

  // 1-based access; pos in [1, size()].
  bool bit(uint64_t pos) const { return (words_[(pos - 1) / 64] >> ((pos - 1) % 64)) & 1; }

  uint64_t rank1(uint64_t i) const;
  uint64_t rank0(uint64_t i) const { return check_rank(i), i - rank1(i); }
  uint64_t rank(bool symbol, uint64_t i) const { return symbol ? rank1(i) : rank0(i); }

  uint64_t select1(uint64_t j) const;
  uint64_t select0(uint64_t j) const;
  uint64_t select(bool symbol, uint64_t j) const { return symbol ? select1(j) : select0(j); }

  uint64_t payload_bits() const { return len_; }
  uint64_t aux_bits() const;
  uint64_t total_bits() const { return payload_bits() + aux_bits(); }

  void serialize(ByteWriter& w) const;
  static PlainBitvector deserialize(ByteReader& r);

 private:
  static constexpr uint64_t kSuperBits = 512;
  static constexpr uint64_t kWordsPerSuper = kSuperBits / 64;
  static constexpr uint64_t kSelectSample = 4096;

  uint64_t check_rank(uint64_t i) const {
    if (i > len_) throw std::out_of_range("bitvector rank: position out of range");
    return i;
  }
  void build_directories();
  uint64_t select_general(bool symbol, uint64_t j) const;
  uint64_t super_count(bool symbol, uint64_t sb) const {
    return symbol ? super_[sb] : sb * kSuperBits - super_[sb];
  }

  uint64_t len_ = 0;
  uint64_t ones_ = 0;
  std::vector<uint64_t> words_;
  std::vector<uint64_t> super_;    // ones before each superblock
  std::vector<uint16_t> block_;    // ones before each word, within its superblock
  std::vector<uint32_t> hints1_;   // superblock holding the (4096k+1)-th one
  std::vector<uint32_t> hints0_;   // same for zeros
};

// Monotone position set over a large universe (Elias-Fano split). Stores the
// m set-bit positions in m*floor(lg(u/m)) low bits plus a unary-coded upper
// part, so select1 is a constant number of probes and the whole structure
// stays within m*ceil(lg(u/m)) + 3m bits. Query paths use select1 only;
// rank1 searches the upper part.
class SparseBitvector {
 public:
  SparseBitvector() = default;
  // positions: strictly increasing 1-based values, each <= universe.
  SparseBitvector(const std::vector<uint64_t>& positions, uint64_t universe);

  uint64_t universe() const { return universe_; }
  uint64_t ones() const { return ones_; }

  uint64_t select1(uint64_t j) const;   // j in [1, ones]
  uint64_t rank1(uint64_t i) const;     // i in [0, universe]

  uint64_t total_bits() const;

  void serialize(ByteWriter& w) const;
  static SparseBitvector deserialize(ByteReader& r);

 private:
  uint64_t high_select1(uint64_t j) const;  // 0-based position in highs
  uint64_t high_select0(uint64_t j) const;
  bool high_bit(uint64_t pos) const { return (highs_[pos / 64] >> (pos % 64)) & 1; }
  uint64_t low_at(uint64_t idx) const;
  void build_high_directories();

  uint64_t universe_ = 0;
  uint64_t ones_ = 0;
  uint32_t low_width_ = 0;
  uint64_t highs_len_ = 0;
  std::vector<uint64_t> highs_;
  std::vector<uint64_t> lows_;         // packed low_width_-bit entries
  std::vector<uint64_t> high_super_;   // ones before each 512-bit superblock of highs
  std::vector<uint32_t> hints1_;
  std::vector<uint32_t> hints0_;
};

// Packed array of fixed-width unsigned entries; the backing store for all
// O(lg n)-bit satellite arrays.
class FixedWidthArray {
 public:
  FixedWidthArray() = default;
  FixedWidthArray(uint64_t count, uint32_t width)
      : count_(count), width_(width), words_((count * width + 63) / 64, 0) {}

  uint64_t get(uint64_t i) const {
    uint64_t bit = i * width_;
    uint64_t word = bit / 64, off = bit % 64;
    uint64_t v = words_[word] >> off;
    if (off + width_ > 64) v |= words_[word + 1] << (64 - off);
    return v & mask();
  }
  void set(uint64_t i, uint64_t v) {
    uint64_t bit = i * width_;
    uint64_t word = bit / 64, off = bit % 64;
    words_[word] = (words_[word] & ~(mask() << off)) | ((v & mask()) << off);
    if (off + width_ > 64) {
      uint64_t hi = width_ - (64 - off);
      words_[word + 1] = (words_[word + 1] & ~((uint64_t(1) << hi) - 1)) | ((v & mask()) >> (64 - off));
    }
  }
  uint64_t size() const { return count_; }
  uint32_t width() const { return width_; }
  uint64_t total_bits() const { return count_ * width_ + 128; }

  void serialize(ByteWriter& w) const {
    w.u64(count_);
    w.u32(width_);
    w.u64_vec(words_);
  }
  static FixedWidthArray deserialize(ByteReader& r) {
    FixedWidthArray a;
    a.count_ = r.u64();
    a.width_ = r.u32();
    a.words_ = r.u64_vec();
    return a;
  }

 private:
  uint64_t mask() const { return width_ == 64 ? ~uint64_t(0) : (uint64_t(1) << width_) - 1; }
  uint64_t count_ = 0;
  uint32_t width_ = 0;
  std::vector<uint64_t> words_;
};

// D/E/P arrays switch representation between plain and compressed builds.
// Both sides answer select1; rank1 on the sparse side is a bounded search.
class BitvecAny {
 public:
  BitvecAny() = default;
  explicit BitvecAny(PlainBitvector bv) : sparse_(false), plain_(std::move(bv)) {}
  explicit BitvecAny(SparseBitvector bv) : sparse_(true), sp_(std::move(bv)) {}

  bool is_sparse() const { return sparse_; }
  uint64_t size() const { return sparse_ ? sp_.universe() : plain_.size(); }
  uint64_t ones() const { return sparse_ ? sp_.ones() : plain_.ones(); }
  uint64_t select1(uint64_t j) const { return sparse_ ? sp_.select1(j) : plain_.select1(j); }
  uint64_t rank1(uint64_t i) const { return sparse_ ? sp_.rank1(i) : plain_.rank1(i); }
  uint64_t total_bits() const { return sparse_ ? sp_.total_bits() : plain_.total_bits(); }

  void serialize(ByteWriter& w) const {
    w.u8(sparse_ ? 1 : 0);
    if (sparse_)
      sp_.serialize(w);
    else
      plain_.serialize(w);
  }
  static BitvecAny deserialize(ByteReader& r) {
    if (r.u8())
      return BitvecAny(SparseBitvector::deserialize(r));
    return BitvecAny(PlainBitvector::deserialize(r));
  }

 private:
  bool sparse_ = false;
  PlainBitvector plain_;
  SparseBitvector sp_;
};

}  // namespace dfsidx
