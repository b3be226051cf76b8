#include "doctest.h"
#include "snorm/blocks.hpp"

#include <cmath>
#include <random>

using namespace snorm;

namespace {
DigitBlock b2(const char* s) { return DigitBlock::parse(s, 2); }
std::vector<std::string> strs(const std::vector<DigitBlock>& bs) {
  std::vector<std::string> out;
  for (const auto& b : bs) out.push_back(b.str());
  return out;
}
}  // namespace

TEST_CASE("digit strings") {
  CHECK(DigitBlock::parse("0a9z", 36).str() == "0a9z");
  CHECK(DigitBlock::parse("1.40.0", 41).str() == "1.40.0");
  CHECK(DigitBlock::parse("1.40.0", 41)[1] == 40);
  CHECK_THROWS_AS(DigitBlock::parse("2", 2), std::invalid_argument);
  CHECK_THROWS_AS(DigitBlock::parse("1..2", 50), std::invalid_argument);
  CHECK(DigitBlock::parse("", 50).empty());
  CHECK(b2("1011").value() == 11);
  CHECK(b2("0011") < b2("0100"));
}

TEST_CASE("parse_blocks") {
  CHECK(strs(parse_blocks(b2("110100"), 2)) == std::vector<std::string>{"11", "01", "00"});
  CHECK(strs(parse_blocks(b2("10111"), 2)) == std::vector<std::string>{"10", "11"});
  CHECK(strs(parse_blocks(b2("101"), 1)) == std::vector<std::string>{"1", "0", "1"});
  CHECK_THROWS_AS(parse_blocks(b2("1"), 0), std::invalid_argument);
}

TEST_CASE("discrepancy") {
  CHECK(discrepancy(b2("0011")) == 0);
  CHECK(discrepancy(b2("0001")) == Rational(1, 4));
  CHECK(discrepancy(b2("0000")) == Rational(1, 2));
  CHECK(discrepancy(DigitBlock::parse("000", 3)) == Rational(2, 3));
  CHECK_THROWS_AS(discrepancy(b2("")), std::invalid_argument);
  CHECK(chunk_discrepancy(b2("00011011"), 2) == 0);
  CHECK(chunk_discrepancy(b2("000000"), 2) == Rational(3, 4));
}

TEST_CASE("discrepancy range and chunk totals") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint32_t s = 2 + rng() % 4;
    std::vector<Digit> d(1 + rng() % 40);
    for (auto& x : d) x = static_cast<Digit>(rng() % s);
    const DigitBlock w(s, d);
    const Rational D = discrepancy(w);
    CHECK(D >= 0);
    CHECK(D <= 1 - Rational(1, s));
    for (std::size_t m = 1; m <= 3; ++m) {
      const auto chunks = parse_blocks(w, m);
      CHECK(chunks.size() == w.size() / m);
      std::uint64_t total = 0;
      std::vector<Digit> pattern(m, 0);
      for (std::uint64_t v = 0; v < checked_pow(s, m); ++v) {
        std::uint64_t rest = v;
        for (std::size_t i = m; i-- > 0;) {
          pattern[i] = static_cast<Digit>(rest % s);
          rest /= s;
        }
        total += count_chunk(w, DigitBlock(s, pattern));
      }
      CHECK(total == w.size() / m);
    }
  }
  // zero exactly when all counts agree
  CHECK(discrepancy(DigitBlock::parse("012210", 3)) == 0);
  CHECK(discrepancy(DigitBlock::parse("012211", 3)) > 0);
}

TEST_CASE("is_block_equivalent") {
  CHECK(is_block_equivalent(b2("10"), b2("01"), {1}));
  CHECK_FALSE(is_block_equivalent(b2("10"), b2("01"), {2}));
  CHECK(is_block_equivalent(b2("1001"), b2("1001"), {1, 2, 4}));
  CHECK_THROWS_AS(is_block_equivalent(b2("10"), b2("011"), {1}), std::invalid_argument);
}

TEST_CASE("is_balanced") {
  CHECK(is_balanced(b2("00011011"), 2));
  CHECK_FALSE(is_balanced(b2("0000"), 1));
  CHECK_THROWS_AS(is_balanced(b2("000"), 2), std::invalid_argument);
}

TEST_CASE("inequivalent_block_pair") {
  auto p = inequivalent_block_pair(5, {1}, 2);
  CHECK(p.u.str() == "10");
  CHECK(p.v.str() == "01");
  p = inequivalent_block_pair(3, {}, 1);
  CHECK(p.u.str() == "0");
  CHECK(p.v.str() == "1");
  p = inequivalent_block_pair(2, {2, 3}, 4);
  CHECK(p.u.size() == 48);
  CHECK(p.cell_len == 12);
  for (std::size_t i = 0; i < 48; ++i) {
    const bool one = i == 0 || i == 15 || i == 28 || i == 41;
    CHECK(p.u[i] == (one ? 1u : 0u));
  }
  CHECK(is_block_equivalent(p.u, p.v, {1, 2, 3}));
  CHECK_FALSE(is_block_equivalent(p.u, p.v, {4}));
  CHECK_THROWS_AS(inequivalent_block_pair(2, {4}, 2), std::invalid_argument);
}

TEST_CASE("inequivalent_block_pair over small M") {
  for (std::uint64_t n = 2; n <= 5; ++n) {
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
      IntSet m;
      for (std::uint64_t v = 1; v <= 4; ++v)
        if (mask >> (v - 1) & 1 && v % n != 0) m.insert(v);
      const auto p = inequivalent_block_pair(3, m, n);
      IntSet all = p.extended;
      all.insert(n);
      CHECK(p.u.size() == p.v.size());
      CHECK(p.u.size() % lcm_of(all) == 0);
      CHECK(is_block_equivalent(p.u, p.v, p.extended));
      CHECK_FALSE(is_block_equivalent(p.u, p.v, {n}));
    }
  }
}

TEST_CASE("count_low_discrepancy") {
  CHECK(count_low_discrepancy(2, 2, Rational(6, 10)) == 4);
  CHECK(count_low_discrepancy(2, 2, Rational(3, 10)) == 2);
  CHECK(count_low_discrepancy(3, 4, Rational(2)) == 81);
  // balanced binary words of length 6: C(6,3) = 20; D < 1/6 needs exact balance
  CHECK(count_low_discrepancy(2, 6, Rational(1, 6)) == 20);
  CHECK_THROWS_AS(count_low_discrepancy(2, 30, Rational(1, 2)), std::length_error);
}

TEST_CASE("sample_low_discrepancy") {
  // Sampled share tracks the exact count on B_2^12.
  const Rational eps(1, 5);
  const double exact = double(count_low_discrepancy(2, 12, eps)) / 4096;
  const std::uint64_t n = 20000;
  const double share = double(sample_low_discrepancy(2, 12, eps, n, 3)) / double(n);
  CHECK(std::abs(share - exact) < 0.02);
  CHECK(sample_low_discrepancy(3, 40, Rational(1, 8), 5000, 9, Exec::serial) ==
        sample_low_discrepancy(3, 40, Rational(1, 8), 5000, 9, Exec::parallel));
  CHECK(sample_low_discrepancy(2, 8, Rational(2), 100, 1) == 100);
}
