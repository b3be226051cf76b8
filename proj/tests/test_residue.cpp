#include "doctest.h"
#include "oracles.hpp"
#include "snorm/residue.hpp"

#include <random>

using namespace snorm;

TEST_CASE("euler_phi") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(7) == 6);
  CHECK(euler_phi(6) == 2);
  for (std::uint64_t n = 1; n <= 200; ++n) CHECK(euler_phi(n) == oracle::phi(n));
  CHECK_THROWS_AS(euler_phi(0), std::invalid_argument);
}

TEST_CASE("partition_count examples") {
  CHECK(partition_count({3, 6, 4, 2}) == 1);
  CHECK(partition_count({2, 1, 1, 3}) == 3);
  CHECK(partition_count({3, 3, 2, 1}) == 1);
  CHECK(partition_count({1, 0, 0, 4}) == 1);
  CHECK(partition_count({4, 100, 2, 1}) == 0);
}

TEST_CASE("partition_count matches subset enumeration") {
  for (std::uint64_t n = 1; n <= 5; ++n) {
    for (std::uint64_t k = 1; k <= 3; ++k) {
      const std::uint64_t max_v = k * (n - 1);
      const std::uint64_t max_s = k * n * (n - 1) / 2;
      for (std::uint64_t v = 0; v <= max_v; ++v) {
        for (std::uint64_t sigma = 0; sigma <= max_s; ++sigma) {
          CHECK(partition_count({n, sigma, v, k}) == oracle::partitions(n, sigma, v, k));
        }
      }
    }
  }
}

TEST_CASE("haiman_difference") {
  CHECK(haiman_difference(3, 1) == 2);
  CHECK(haiman_difference(2, 1) == 1);
  CHECK(haiman_difference(4, 2) == 8);
  for (std::uint64_t n = 1; n <= 6; ++n) {
    for (std::uint64_t k = 1; k <= 3; ++k) {
      if (k * (n - 1) <= 18) CHECK(haiman_difference(n, k) == oracle::haiman(n, k));
      CHECK(haiman_difference(n, k) == haiman_closed_form(n, k));
    }
  }
}

TEST_CASE("residue_counts") {
  CHECK(residue_counts({0, 5}, 2) == std::vector<std::uint64_t>{1, 1});
  CHECK(residue_counts({0, 3, 4, 5}, 4) == std::vector<std::uint64_t>{2, 1, 0, 1});
  CHECK(residue_counts({}, 3) == std::vector<std::uint64_t>{0, 0, 0});
  CHECK_THROWS_AS(residue_counts({1}, 0), std::invalid_argument);
}

TEST_CASE("is_residue_equivalent") {
  CHECK(is_residue_equivalent({0, 5}, {2, 3}, {2, 3}));
  CHECK_FALSE(is_residue_equivalent({0, 5}, {2, 3}, {4}));
  CHECK(is_residue_equivalent({1, 7, 9}, {1, 7, 9}, {2, 5, 11}));
}

TEST_CASE("residue equivalence is an equivalence relation") {
  std::mt19937_64 rng(7);
  auto random_set = [&] {
    IntSet s;
    for (int i = 0; i < 4; ++i) s.insert(rng() % 12);
    return s;
  };
  const IntSet moduli{2, 3};
  for (int trial = 0; trial < 300; ++trial) {
    const IntSet x = random_set(), y = random_set(), z = random_set();
    CHECK(is_residue_equivalent(x, x, moduli));
    CHECK(is_residue_equivalent(x, y, moduli) == is_residue_equivalent(y, x, moduli));
    if (is_residue_equivalent(x, y, moduli) && is_residue_equivalent(y, z, moduli))
      CHECK(is_residue_equivalent(x, z, moduli));
    for (std::uint64_t m = 1; m <= 6; ++m) {
      const auto counts = residue_counts(x, m);
      std::uint64_t sum = 0;
      for (auto c : counts) sum += c;
      CHECK(sum == x.size());
    }
  }
}

TEST_CASE("fair_extension") {
  CHECK(fair_extension({2, 3}, 4) == IntSet{1, 2, 3});
  CHECK(fair_extension({1}, 2) == IntSet{1});
  CHECK(fair_extension({3}, 2) == IntSet{3});
  CHECK(fair_extension({}, 3) == IntSet{1, 2});
  CHECK(fair_extension({1, 4}, 3) == IntSet{1, 2, 4, 5});
  CHECK_THROWS_AS(fair_extension({2}, 2), std::invalid_argument);
}

TEST_CASE("even_odd_sums") {
  auto e = even_odd_sums({1});
  CHECK(e.even == IntMultiset{{0, 1}});
  CHECK(e.odd == IntMultiset{{1, 1}});
  e = even_odd_sums({1, 2});
  CHECK(e.even == IntMultiset{{0, 1}, {3, 1}});
  CHECK(e.odd == IntMultiset{{1, 1}, {2, 1}});
  e = even_odd_sums({});
  CHECK(e.even == IntMultiset{{0, 1}});
  CHECK(e.odd.empty());
  e = even_odd_sums({1, 2, 3, 4, 5});
  CHECK(total_count(e.even) + total_count(e.odd) == 32);
  CHECK(total_count(e.even) == total_count(e.odd));
}

TEST_CASE("minimal_residue_sets") {
  auto r = minimal_residue_sets({1}, 2);
  CHECK(r.x == IntSet{0});
  CHECK(r.y == IntSet{1});
  r = minimal_residue_sets({2, 3}, 4);
  CHECK(r.x == IntSet{0, 3, 4, 5});
  CHECK(r.y == IntSet{1, 2, 3, 6});
  CHECK(r.modulus == 12);
  r = minimal_residue_sets({3}, 2);
  CHECK(r.x == IntSet{0});
  CHECK(r.y == IntSet{3});
  CHECK_THROWS_AS(minimal_residue_sets({4}, 2), std::invalid_argument);
}

TEST_CASE("minimal_residue_sets separates n from M") {
  for (std::uint64_t n = 2; n <= 6; ++n) {
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
      IntSet m;
      for (std::uint64_t v = 1; v <= 6; ++v)
        if (mask >> (v - 1) & 1 && v % n != 0) m.insert(v);
      const auto r = minimal_residue_sets(m, n);
      CHECK(r.x.size() == r.y.size());
      CHECK(is_residue_equivalent(r.x, r.y, m));
      CHECK(is_residue_equivalent(r.x, r.y, r.extended));
      CHECK_FALSE(is_residue_equivalent(r.x, r.y, {n}));
    }
  }
}
