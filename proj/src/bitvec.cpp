#include "dfsidx/bitvec.hpp"

#include <bit>

namespace dfsidx {

uint32_t select_in_word(uint64_t w, uint32_t k) {
  // Halving search on popcounts; six probes per call.
  uint32_t pos = 0;
  for (uint32_t span = 32; span > 0; span >>= 1) {
    uint32_t c = uint32_t(std::popcount(w & ((span == 64) ? ~0ull : ((uint64_t(1) << span) - 1))));
    if (k > c) {
      k -= c;
      w >>= span;
      pos += span;
    }
  }
  return pos;
}

PlainBitvector::PlainBitvector(BitString bits)
    : len_(bits.size()), words_(std::move(bits.words())) {
  words_.resize((len_ + 63) / 64, 0);
  // Clear any stray bits past the end so popcounts are exact.
  if (len_ % 64) words_.back() &= (uint64_t(1) << (len_ % 64)) - 1;
  build_directories();
}

void PlainBitvector::build_directories() {
  uint64_t n_words = words_.size();
  uint64_t n_super = (n_words + kWordsPerSuper - 1) / kWordsPerSuper + 1;
  super_.assign(n_super, 0);
  block_.assign(n_words, 0);

  uint64_t acc = 0;
  for (uint64_t w = 0; w < n_words; ++w) {
    if (w % kWordsPerSuper == 0) super_[w / kWordsPerSuper] = acc;
    block_[w] = uint16_t(acc - super_[w / kWordsPerSuper]);
    acc += uint64_t(std::popcount(words_[w]));
  }
  super_[(n_words + kWordsPerSuper - 1) / kWordsPerSuper] = acc;
  if (n_words % kWordsPerSuper == 0) super_[n_words / kWordsPerSuper] = acc;
  ones_ = acc;

  // Sampled select hints: superblock index of every 4096-th occurrence.
  hints1_.clear();
  hints0_.clear();
  uint64_t seen1 = 0, seen0 = 0;
  for (uint64_t w = 0; w < n_words; ++w) {
    uint64_t pc = uint64_t(std::popcount(words_[w]));
    uint64_t zc = 64 - pc;
    if (seen1 / kSelectSample != (seen1 + pc) / kSelectSample || (seen1 == 0 && pc > 0 && hints1_.empty()))
      hints1_.push_back(uint32_t(w / kWordsPerSuper));
    if (seen0 / kSelectSample != (seen0 + zc) / kSelectSample || (seen0 == 0 && zc > 0 && hints0_.empty()))
      hints0_.push_back(uint32_t(w / kWordsPerSuper));
    seen1 += pc;
    seen0 += zc;
  }
}

uint64_t PlainBitvector::rank1(uint64_t i) const {
  check_rank(i);
  if (i == 0) return 0;
  uint64_t pos = i - 1;  // count bits in [0, pos] 0-based
  uint64_t w = pos / 64;
  uint64_t r = super_[w / kWordsPerSuper] + block_[w];
  uint64_t within = pos % 64;
  uint64_t m = (within == 63) ? ~uint64_t(0) : ((uint64_t(1) << (within + 1)) - 1);
  return r + uint64_t(std::popcount(words_[w] & m));
}

uint64_t PlainBitvector::select1(uint64_t j) const {
  if (j == 0 || j > ones_) throw std::out_of_range("bitvector select1: rank out of range");
  return select_general(true, j);
}

uint64_t PlainBitvector::select0(uint64_t j) const {
  if (j == 0 || j > zeros()) throw std::out_of_range("bitvector select0: rank out of range");
  return select_general(false, j);
}

uint64_t PlainBitvector::select_general(bool symbol, uint64_t j) const {
  const auto& hints = symbol ? hints1_ : hints0_;
  uint64_t hi_idx = (j - 1) / kSelectSample;
  uint64_t lo_sb = hints[hi_idx];
  uint64_t hi_sb = (hi_idx + 1 < hints.size()) ? hints[hi_idx + 1] : (super_.size() - 2);

  // Superblock with count(symbol) < j at its start, largest such.
  while (lo_sb < hi_sb) {
    uint64_t mid = (lo_sb + hi_sb + 1) / 2;
    if (super_count(symbol, mid) < j)
      lo_sb = mid;
    else
      hi_sb = mid - 1;
  }
  uint64_t sb = lo_sb;
  uint64_t carried = j - super_count(symbol, sb);
  uint64_t w = sb * kWordsPerSuper;
  uint64_t w_end = std::min<uint64_t>(w + kWordsPerSuper, words_.size());
  for (; w < w_end; ++w) {
    uint64_t word = symbol ? words_[w] : ~words_[w];
    uint64_t pc = uint64_t(std::popcount(word));
    if (carried <= pc) return w * 64 + select_in_word(word, uint32_t(carried)) + 1;
    carried -= pc;
  }
  throw std::logic_error("bitvector select: directory inconsistency");
}

uint64_t PlainBitvector::aux_bits() const {
  return super_.size() * 64 + block_.size() * 16 + (hints1_.size() + hints0_.size()) * 32;
}

void PlainBitvector::serialize(ByteWriter& w) const {
  w.u64(len_);
  w.u64_vec(words_);
  w.u64_vec(super_);
  w.u64(block_.size());
  for (uint16_t b : block_) w.u16(b);
  w.u64(hints1_.size());
  for (uint32_t h : hints1_) w.u32(h);
  w.u64(hints0_.size());
  for (uint32_t h : hints0_) w.u32(h);
  w.pad_to(8);
}

PlainBitvector PlainBitvector::deserialize(ByteReader& r) {
  PlainBitvector bv;
  bv.len_ = r.u64();
  bv.words_ = r.u64_vec();
  bv.super_ = r.u64_vec();
  bv.block_.resize(r.u64());
  for (auto& b : bv.block_) b = r.u16();
  bv.hints1_.resize(r.u64());
  for (auto& h : bv.hints1_) h = r.u32();
  bv.hints0_.resize(r.u64());
  for (auto& h : bv.hints0_) h = r.u32();
  r.skip_pad(8);
  bv.ones_ = bv.super_.empty() ? 0 : bv.super_.back();
  return bv;
}

// ---------------------------------------------------------------------------

SparseBitvector::SparseBitvector(const std::vector<uint64_t>& positions, uint64_t universe)
    : universe_(universe), ones_(positions.size()) {
  for (size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] == 0 || positions[i] > universe)
      throw std::invalid_argument("sparse bitvector: position out of universe");
    if (i > 0 && positions[i] <= positions[i - 1])
      throw std::invalid_argument("sparse bitvector: positions not strictly increasing");
  }
  low_width_ = 0;
  if (ones_ > 0) {
    uint64_t ratio = universe_ / ones_;
    low_width_ = ratio > 1 ? floor_log2(ratio) : 0;
  }
  highs_len_ = ones_ + (ones_ ? (universe_ >> low_width_) : 0) + 1;
  highs_.assign((highs_len_ + 63) / 64, 0);
  if (low_width_ > 0) lows_.assign((ones_ * low_width_ + 63) / 64, 0);
  for (uint64_t i = 0; i < ones_; ++i) {
    uint64_t p = positions[i] - 1;  // 0-based
    uint64_t high = p >> low_width_;
    uint64_t pos = high + i;
    highs_[pos / 64] |= uint64_t(1) << (pos % 64);
    if (low_width_ > 0) {
      uint64_t bit = i * low_width_;
      uint64_t low = p & ((uint64_t(1) << low_width_) - 1);
      uint64_t word = bit / 64, off = bit % 64;
      lows_[word] |= low << off;
      if (off + low_width_ > 64) lows_[word + 1] |= low >> (64 - off);
    }
  }
  build_high_directories();
}

uint64_t SparseBitvector::low_at(uint64_t idx) const {
  if (low_width_ == 0) return 0;
  uint64_t bit = idx * low_width_;
  uint64_t word = bit / 64, off = bit % 64;
  uint64_t v = lows_[word] >> off;
  if (off + low_width_ > 64) v |= lows_[word + 1] << (64 - off);
  return v & ((uint64_t(1) << low_width_) - 1);
}

void SparseBitvector::build_high_directories() {
  uint64_t n_words = highs_.size();
  uint64_t n_super = n_words / 8 + 2;
  high_super_.assign(n_super, 0);
  uint64_t acc = 0;
  for (uint64_t w = 0; w < n_words; ++w) {
    if (w % 8 == 0) high_super_[w / 8] = acc;
    acc += uint64_t(std::popcount(highs_[w]));
  }
  high_super_[(n_words + 7) / 8] = acc;
  if (n_words % 8 == 0) high_super_[n_words / 8] = acc;

  hints1_.clear();
  hints0_.clear();
  uint64_t seen1 = 0, seen0 = 0;
  for (uint64_t w = 0; w < n_words; ++w) {
    uint64_t pc = uint64_t(std::popcount(highs_[w]));
    uint64_t zc = 64 - pc;
    if ((seen1 == 0 && pc > 0 && hints1_.empty()) || seen1 / 4096 != (seen1 + pc) / 4096)
      hints1_.push_back(uint32_t(w / 8));
    if ((seen0 == 0 && zc > 0 && hints0_.empty()) || seen0 / 4096 != (seen0 + zc) / 4096)
      hints0_.push_back(uint32_t(w / 8));
    seen1 += pc;
    seen0 += zc;
  }
}

uint64_t SparseBitvector::high_select1(uint64_t j) const {
  uint64_t lo = hints1_[(j - 1) / 4096];
  uint64_t hi = ((j - 1) / 4096 + 1 < hints1_.size()) ? hints1_[(j - 1) / 4096 + 1]
                                                      : (high_super_.size() - 2);
  while (lo < hi) {
    uint64_t mid = (lo + hi + 1) / 2;
    if (high_super_[mid] < j)
      lo = mid;
    else
      hi = mid - 1;
  }
  uint64_t carried = j - high_super_[lo];
  for (uint64_t w = lo * 8; w < highs_.size(); ++w) {
    uint64_t pc = uint64_t(std::popcount(highs_[w]));
    if (carried <= pc) return w * 64 + select_in_word(highs_[w], uint32_t(carried));
    carried -= pc;
  }
  throw std::logic_error("sparse bitvector: high select1 inconsistency");
}

uint64_t SparseBitvector::high_select0(uint64_t j) const {
  uint64_t lo = hints0_[(j - 1) / 4096];
  uint64_t hi = ((j - 1) / 4096 + 1 < hints0_.size()) ? hints0_[(j - 1) / 4096 + 1]
                                                      : (high_super_.size() - 2);
  while (lo < hi) {
    uint64_t mid = (lo + hi + 1) / 2;
    if (mid * 512 - high_super_[mid] < j)
      lo = mid;
    else
      hi = mid - 1;
  }
  uint64_t carried = j - (lo * 512 - high_super_[lo]);
  for (uint64_t w = lo * 8; w < highs_.size(); ++w) {
    uint64_t zc = 64 - uint64_t(std::popcount(highs_[w]));
    if (carried <= zc) return w * 64 + select_in_word(~highs_[w], uint32_t(carried));
    carried -= zc;
  }
  throw std::logic_error("sparse bitvector: high select0 inconsistency");
}

uint64_t SparseBitvector::select1(uint64_t j) const {
  if (j == 0 || j > ones_) throw std::out_of_range("sparse bitvector select1: rank out of range");
  uint64_t up = high_select1(j);
  uint64_t high = up - (j - 1);
  return ((high << low_width_) | low_at(j - 1)) + 1;
}

uint64_t SparseBitvector::rank1(uint64_t i) const {
  if (i > universe_) throw std::out_of_range("sparse bitvector rank1: position out of range");
  if (i == 0 || ones_ == 0) return 0;
  uint64_t p = i - 1;  // count stored positions <= p (0-based)
  uint64_t high = p >> low_width_;
  // Ones with high part < high sit before the high-th zero of the upper code.
  uint64_t start = (high == 0) ? 0 : high_select0(high) - high + 1;
  uint64_t end = high_select0(high + 1) - (high + 1) + 1;  // ones with high part <= high
  uint64_t low = p & (low_width_ ? (uint64_t(1) << low_width_) - 1 : 0);
  // Scan the run [start, end) of equal high parts; runs are short on average
  // and the arrays this backs are only rank-probed on cold paths.
  uint64_t lo = start, hi = end;
  while (lo < hi) {
    uint64_t mid = (lo + hi) / 2;
    if (low_at(mid) <= low)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

uint64_t SparseBitvector::total_bits() const {
  return ones_ * low_width_ + highs_len_ + high_super_.size() * 64 +
         (hints1_.size() + hints0_.size()) * 32 + 192;
}

void SparseBitvector::serialize(ByteWriter& w) const {
  w.u64(universe_);
  w.u64(ones_);
  w.u32(low_width_);
  w.u64(highs_len_);
  w.u64_vec(highs_);
  w.u64_vec(lows_);
  w.u64_vec(high_super_);
  w.u64(hints1_.size());
  for (uint32_t h : hints1_) w.u32(h);
  w.u64(hints0_.size());
  for (uint32_t h : hints0_) w.u32(h);
  w.pad_to(8);
}

SparseBitvector SparseBitvector::deserialize(ByteReader& r) {
  SparseBitvector bv;
  bv.universe_ = r.u64();
  bv.ones_ = r.u64();
  bv.low_width_ = r.u32();
  bv.highs_len_ = r.u64();
  bv.highs_ = r.u64_vec();
  bv.lows_ = r.u64_vec();
  bv.high_super_ = r.u64_vec();
  bv.hints1_.resize(r.u64());
  for (auto& h : bv.hints1_) h = r.u32();
  bv.hints0_.resize(r.u64());
  for (auto& h : bv.hints0_) h = r.u32();
  r.skip_pad(8);
  return bv;
}

}  // namespace dfsidx
