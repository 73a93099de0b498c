#include <doctest.h>

#include "dfsidx/bitvec.hpp"
#include "dfsidx/gen.hpp"
#include "oracles.hpp"

using namespace dfsidx;

namespace {

PlainBitvector from_string(const std::string& s) {
  BitString b;
  for (char c : s) b.append(c == '1');
  return PlainBitvector(std::move(b));
}

std::vector<bool> to_bools(const std::string& s) {
  std::vector<bool> v;
  for (char c : s) v.push_back(c == '1');
  return v;
}

}  // namespace

TEST_SUITE("bitvec") {
  TEST_CASE("empty bitvector") {
    PlainBitvector bv = from_string("");
    CHECK(bv.size() == 0);
    CHECK(bv.rank1(0) == 0);
    CHECK_THROWS_AS(bv.select1(1), std::out_of_range);
  }

  TEST_CASE("all ones identity") {
    PlainBitvector bv = from_string("111111");
    CHECK(bv.rank1(6) == 6);
    CHECK(bv.select1(6) == 6);
  }

  TEST_CASE("fixture 101100") {
    PlainBitvector bv = from_string("101100");
    CHECK(bv.select1(2) == 3);
    CHECK(bv.rank1(4) == 3);
    CHECK(bv.select1(3) == 4);
    CHECK(bv.rank1(0) == 0);
    CHECK(bv.rank1(bv.size()) + bv.rank0(bv.size()) == bv.size());
  }

  TEST_CASE("zeros side") {
    CHECK(from_string("000").rank0(3) == 3);
    CHECK(from_string("0011").select0(2) == 2);
    CHECK(from_string("1").select1(1) == 1);
  }

  TEST_CASE("range errors") {
    PlainBitvector bv = from_string("1010");
    CHECK_THROWS_AS(bv.rank1(5), std::out_of_range);
    CHECK_THROWS_AS(bv.select1(3), std::out_of_range);
    CHECK_THROWS_AS(bv.select0(3), std::out_of_range);
  }

  TEST_CASE("rank/select agree with a linear scan") {
    Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
      uint64_t len = 1 + rng.below(1 << 12);
      uint64_t density = 1 + rng.below(99);
      std::string s;
      for (uint64_t i = 0; i < len; ++i) s.push_back(rng.below(100) < density ? '1' : '0');
      PlainBitvector bv = from_string(s);
      auto bits = to_bools(s);
      for (int probe = 0; probe < 40; ++probe) {
        uint64_t i = rng.below(len + 1);
        CHECK(bv.rank1(i) == oracle::naive_rank(bits, true, i));
        CHECK(bv.rank0(i) == oracle::naive_rank(bits, false, i));
      }
      uint64_t ones = bv.ones(), zeros = bv.zeros();
      for (int probe = 0; probe < 40; ++probe) {
        if (ones) {
          uint64_t j = 1 + rng.below(ones);
          CHECK(bv.select1(j) == oracle::naive_select(bits, true, j));
        }
        if (zeros) {
          uint64_t j = 1 + rng.below(zeros);
          CHECK(bv.select0(j) == oracle::naive_select(bits, false, j));
        }
      }
      // select/rank inversion at a random position holding each symbol.
      for (int probe = 0; probe < 10; ++probe) {
        uint64_t p = 1 + rng.below(len);
        bool a = bv.bit(p);
        CHECK(bv.select(a, bv.rank(a, p)) == p);
      }
    }
  }

  TEST_CASE("auxiliary ratio non-increasing across sizes") {
    double prev = 1.0;
    for (uint64_t len : {uint64_t(1) << 12, uint64_t(1) << 16, uint64_t(1) << 20}) {
      Rng rng(3);
      BitString b(len);
      for (uint64_t i = 0; i < len; ++i)
        if (rng.below(2)) b.set(i);
      PlainBitvector bv(std::move(b));
      double ratio = double(bv.aux_bits()) / double(len);
      CHECK(ratio <= prev + 1e-12);
      if (len >= (uint64_t(1) << 16)) CHECK(ratio <= 0.5);
      prev = ratio;
    }
  }

  TEST_CASE("sparse: empty and dense identity") {
    SparseBitvector empty({}, 10);
    CHECK(empty.ones() == 0);
    CHECK(empty.rank1(10) == 0);
    CHECK_THROWS_AS(empty.select1(1), std::out_of_range);

    std::vector<uint64_t> all(64);
    for (uint64_t i = 0; i < 64; ++i) all[i] = i + 1;
    SparseBitvector dense(all, 64);
    for (uint64_t i = 1; i <= 64; ++i) CHECK(dense.select1(i) == i);
  }

  TEST_CASE("sparse fixture [3,7,8] / 12") {
    SparseBitvector sbv({3, 7, 8}, 12);
    CHECK(sbv.select1(2) == 7);
    CHECK(sbv.select1(3) == 8);
    CHECK(sbv.rank1(7) == 2);
    CHECK(sbv.rank1(0) == 0);
    CHECK(sbv.rank1(12) == 3);
    CHECK_THROWS_AS(sbv.select1(4), std::out_of_range);
  }

  TEST_CASE("sparse singleton and arithmetic positions") {
    SparseBitvector one({5}, 9);
    CHECK(one.select1(1) == 5);
    std::vector<uint64_t> evens;
    for (uint64_t i = 1; i <= 40; ++i) evens.push_back(2 * i);
    SparseBitvector ev(evens, 80);
    for (uint64_t i = 1; i <= 40; ++i) CHECK(ev.select1(i) == 2 * i);
  }

  TEST_CASE("sparse input validation") {
    CHECK_THROWS_AS(SparseBitvector({3, 3}, 10), std::invalid_argument);
    CHECK_THROWS_AS(SparseBitvector({5, 4}, 10), std::invalid_argument);
    CHECK_THROWS_AS(SparseBitvector({11}, 10), std::invalid_argument);
  }

  TEST_CASE("sparse round trip and rank against scan") {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      uint64_t universe = 1 + rng.below(1 << 14);
      std::set<uint64_t> set;
      uint64_t want = rng.below(universe / 2 + 1);
      while (set.size() < want) set.insert(1 + rng.below(universe));
      std::vector<uint64_t> pos(set.begin(), set.end());
      SparseBitvector sbv(pos, universe);
      for (size_t j = 0; j < pos.size(); ++j) CHECK(sbv.select1(j + 1) == pos[j]);
      for (int probe = 0; probe < 30; ++probe) {
        uint64_t i = rng.below(universe + 1);
        uint64_t expect = uint64_t(std::upper_bound(pos.begin(), pos.end(), i) - pos.begin());
        CHECK(sbv.rank1(i) == expect);
      }
    }
  }

  TEST_CASE("sparse storage bound") {
    Rng rng(13);
    for (auto [universe, ones] : std::vector<std::pair<uint64_t, uint64_t>>{
             {1 << 16, 1 << 10}, {1 << 16, 1 << 13}, {100000, 777}, {4096, 4096}}) {
      std::set<uint64_t> set;
      while (set.size() < ones) set.insert(1 + rng.below(universe));
      std::vector<uint64_t> pos(set.begin(), set.end());
      SparseBitvector sbv(pos, universe);
      uint64_t budget = ones * uint64_t(ceil_log2((universe + ones - 1) / ones + 1)) + 3 * ones + 512;
      CHECK(sbv.total_bits() <= budget);
    }
  }

  TEST_CASE("serialization round trip") {
    Rng rng(17);
    std::string s;
    for (int i = 0; i < 5000; ++i) s.push_back(rng.below(3) ? '0' : '1');
    PlainBitvector bv = from_string(s);
    ByteWriter w;
    bv.serialize(w);
    ByteReader r(w.data().data(), w.size());
    PlainBitvector bv2 = PlainBitvector::deserialize(r);
    CHECK(bv2.size() == bv.size());
    for (uint64_t j = 1; j <= bv.ones(); ++j) CHECK(bv2.select1(j) == bv.select1(j));

    SparseBitvector sbv({2, 30, 500, 501}, 1000);
    ByteWriter w2;
    sbv.serialize(w2);
    ByteReader r2(w2.data().data(), w2.size());
    SparseBitvector sbv2 = SparseBitvector::deserialize(r2);
    for (uint64_t j = 1; j <= 4; ++j) CHECK(sbv2.select1(j) == sbv.select1(j));
  }

  TEST_CASE("fixed width array") {
    FixedWidthArray a(100, 17);
    Rng rng(23);
    std::vector<uint64_t> ref(100);
    for (int i = 0; i < 100; ++i) {
      ref[i] = rng.below(1 << 17);
      a.set(i, ref[i]);
    }
    for (int i = 0; i < 100; ++i) CHECK(a.get(i) == ref[i]);
  }
}
