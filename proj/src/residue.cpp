#include "snorm/residue.hpp"

#include <algorithm>
#include <stdexcept>

namespace snorm {
namespace {

using Table = std::vector<std::vector<BigInt>>;

// table[v][sigma] = p(n, sigma, v, k) for every v and sigma.
Table partition_table(std::uint64_t n, std::uint64_t k) {
  if (n == 0) throw std::invalid_argument("modulus must be positive");
  if (k == 0) throw std::invalid_argument("repetition count must be positive");
  const std::uint64_t max_v = checked_mul(k, n - 1);
  const std::uint64_t max_sigma = checked_mul(k, n * (n - 1) / 2);
  Table table(max_v + 1, std::vector<BigInt>(max_sigma + 1));
  table[0][0] = 1;

  std::vector<BigInt> choose(k + 1);
  for (std::uint64_t c = 0; c <= k; ++c) {
    mpz_bin_uiui(choose[c].get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(c));
  }

  std::uint64_t used_v = 0;
  std::uint64_t used_sigma = 0;
  for (std::uint64_t value = 1; value < n; ++value) {
    Table next(max_v + 1, std::vector<BigInt>(max_sigma + 1));
    for (std::uint64_t v = 0; v <= used_v; ++v) {
      for (std::uint64_t sigma = 0; sigma <= used_sigma; ++sigma) {
        const BigInt& ways = table[v][sigma];
        if (ways == 0) continue;
        for (std::uint64_t c = 0; c <= k; ++c) {
          next[v + c][sigma + c * value] += ways * choose[c];
        }
      }
    }
    table = std::move(next);
    used_v += k;
    used_sigma += k * value;
  }
  return table;
}

void require_fair_modulus(const IntSet& m, std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("modulus n must be at least 2, got " + std::to_string(n));
  for (auto x : m) {
    if (x == 0) throw std::invalid_argument("M must contain positive integers only");
    if (x % n == 0)
      throw std::invalid_argument(std::to_string(n) + " divides " + std::to_string(x) + " in M");
  }
}

// One progression c, c+L, ... per residue class, sized by the class multiplicity.
IntSet canonical_set(const IntMultiset& ms, std::uint64_t modulus) {
  std::map<std::uint64_t, std::uint64_t> per_class;
  for (const auto& [value, mult] : ms) per_class[value % modulus] += mult;
  IntSet out;
  for (const auto& [c, mult] : per_class) {
    for (std::uint64_t i = 0; i < mult; ++i) out.insert(c + i * modulus);
  }
  return out;
}

}  // namespace

std::uint64_t total_count(const IntMultiset& ms) {
  std::uint64_t total = 0;
  for (const auto& [value, mult] : ms) total += mult;
  return total;
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("euler_phi(0) is undefined");
  std::uint64_t result = n;
  std::uint64_t rest = n;
  for (std::uint64_t p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    result -= result / p;
  }
  if (rest > 1) result -= result / rest;
  return result;
}

BigInt partition_count(const PartitionSpec& spec) {
  const Table table = partition_table(spec.n, spec.k);
  if (spec.v >= table.size() || spec.sigma >= table[0].size()) return 0;
  return table[spec.v][spec.sigma];
}

BigInt haiman_difference(std::uint64_t n, std::uint64_t k) {
  const Table table = partition_table(n, k);
  BigInt diff = 0;
  for (std::uint64_t v = 0; v < table.size(); ++v) {
    for (std::uint64_t sigma = 0; sigma < table[v].size(); sigma += n) {
      if (v % 2 == 0) {
        diff += table[v][sigma];
      } else {
        diff -= table[v][sigma];
      }
    }
  }
  return diff;
}

BigInt haiman_closed_form(std::uint64_t n, std::uint64_t k) {
  if (n == 0 || k == 0) throw std::invalid_argument("n and k must be positive");
  return pow(n, k - 1) * BigInt(euler_phi(n));
}

std::vector<std::uint64_t> residue_counts(const IntSet& xs, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  std::vector<std::uint64_t> counts(m, 0);
  for (auto x : xs) ++counts[x % m];
  return counts;
}

bool is_residue_equivalent(const IntSet& x, const IntSet& y, const IntSet& moduli) {
  return std::all_of(moduli.begin(), moduli.end(),
                     [&](std::uint64_t m) { return residue_counts(x, m) == residue_counts(y, m); });
}

IntSet fair_extension(const IntSet& m, std::uint64_t n) {
  require_fair_modulus(m, n);
  const auto counts = residue_counts(m, n);
  const std::uint64_t k = std::max<std::uint64_t>(1, *std::max_element(counts.begin() + 1, counts.end()));
  IntSet out = m;
  for (std::uint64_t r = 1; r < n; ++r) {
    std::uint64_t missing = k - counts[r];
    for (std::uint64_t candidate = r; missing > 0; candidate += n) {
      if (out.insert(candidate).second) --missing;
    }
  }
  return out;
}

EvenOddSums even_odd_sums(const IntSet& m) {
  EvenOddSums sums;
  sums.even[0] = 1;
  for (auto element : m) {
    IntMultiset even = sums.even;
    IntMultiset odd = sums.odd;
    for (const auto& [value, mult] : sums.odd) even[value + element] += mult;
    for (const auto& [value, mult] : sums.even) odd[value + element] += mult;
    sums.even = std::move(even);
    sums.odd = std::move(odd);
  }
  return sums;
}

ResidueSets minimal_residue_sets(const IntSet& m, std::uint64_t n) {
  require_fair_modulus(m, n);
  ResidueSets out;
  out.extended = fair_extension(m, n);
  IntSet all = out.extended;
  all.insert(n);
  out.modulus = lcm_of(all);
  const EvenOddSums sums = even_odd_sums(out.extended);
  out.x = canonical_set(sums.even, out.modulus);
  out.y = canonical_set(sums.odd, out.modulus);
  return out;
}

}  // namespace snorm
