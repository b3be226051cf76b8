#pragma once

// Brute-force references shared by the unit and acceptance tests. Nothing
// here calls into the library's own algorithms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "snorm/arith.hpp"

namespace oracle {

inline std::uint64_t phi(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t j = 1; j <= n; ++j) c += std::gcd(j, n) == 1;
  return c;
}

// The multiset {1..n-1} with each value repeated k times, as a list.
inline std::vector<std::uint64_t> repeated(std::uint64_t n, std::uint64_t k) {
  std::vector<std::uint64_t> xs;
  for (std::uint64_t v = 1; v < n; ++v)
    for (std::uint64_t i = 0; i < k; ++i) xs.push_back(v);
  return xs;
}

// Sub-multisets (as distinct count vectors, weighted by the number of
// index subsets producing them) with the given size and sum.
inline snorm::BigInt partitions(std::uint64_t n, std::uint64_t sigma, std::uint64_t v, std::uint64_t k) {
  const auto xs = repeated(n, k);
  snorm::BigInt count = 0;
  const std::uint64_t total = std::uint64_t{1} << xs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::uint64_t size = 0, sum = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (mask >> i & 1) {
        ++size;
        sum += xs[i];
      }
    }
    if (size == v && sum == sigma) ++count;
  }
  return count;
}

inline snorm::BigInt haiman(std::uint64_t n, std::uint64_t k) {
  const auto xs = repeated(n, k);
  snorm::BigInt diff = 0;
  const std::uint64_t total = std::uint64_t{1} << xs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::uint64_t size = 0, sum = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (mask >> i & 1) {
        ++size;
        sum += xs[i];
      }
    }
    if (sum % n != 0) continue;
    if (size % 2 == 0) ++diff; else --diff;
  }
  return diff;
}

// Digits of num/den in base r at positions 1..len by long division.
inline std::vector<std::uint32_t> long_division(snorm::BigInt num, const snorm::BigInt& den, std::uint32_t r,
                                                std::uint64_t len) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 0; i < len; ++i) {
    num *= r;
    snorm::BigInt q = num / den;
    out.push_back(static_cast<std::uint32_t>(q.get_ui()));
    num -= q * den;
  }
  return out;
}

// max_d |count_d/len − 1/r| over digits 0..r-1.
inline double digit_discrepancy(const std::vector<std::uint32_t>& w, std::uint32_t r) {
  std::vector<double> counts(r, 0.0);
  for (auto d : w) counts[d] += 1;
  double worst = 0;
  for (double c : counts) worst = std::max(worst, std::abs(c / static_cast<double>(w.size()) - 1.0 / r));
  return worst;
}

}  // namespace oracle
