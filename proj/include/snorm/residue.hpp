#pragma once

// Residue equivalence of integer sets, fair residue multisets and the
// even/odd subset-sum construction that separates one modulus from a set
// of others. The partition counts double as a brute-force oracle for the
// alternating sum identity n^(k-1)·φ(n).

#include <cstdint>
#include <map>
#include <vector>

#include "snorm/arith.hpp"

namespace snorm {

/// value → multiplicity; every stored multiplicity is ≥ 1.
using IntMultiset = std::map<std::uint64_t, std::uint64_t>;

std::uint64_t total_count(const IntMultiset& ms);

struct PartitionSpec {
  std::uint64_t n = 1;      // modulus ≥ 1
  std::uint64_t sigma = 0;  // target sum
  std::uint64_t v = 0;      // number of summands
  std::uint64_t k = 1;      // copies of each of 1..n-1
};

std::uint64_t euler_phi(std::uint64_t n);

/// Ways to write sigma as a sum of exactly v elements taken without
/// replacement from the multiset with each of 1..n-1 repeated k times.
BigInt partition_count(const PartitionSpec& spec);

/// Σ_{n|σ, v even} p(n,σ,v,k) − Σ_{n|σ, v odd} p(n,σ,v,k), by enumeration.
BigInt haiman_difference(std::uint64_t n, std::uint64_t k);

/// n^(k-1)·φ(n).
BigInt haiman_closed_form(std::uint64_t n, std::uint64_t k);

/// Entry r counts the x ∈ xs with x ≡ r (mod m).
std::vector<std::uint64_t> residue_counts(const IntSet& xs, std::uint64_t m);

bool is_residue_equivalent(const IntSet& x, const IntSet& y, const IntSet& moduli);

/// Smallest superset of M whose residues mod n cover 1..n-1 with equal
/// multiplicity; missing slots get the least unused r, r+n, r+2n, ...
IntSet fair_extension(const IntSet& m, std::uint64_t n);

struct EvenOddSums {
  IntMultiset even;  // sums of even-size subsets, the empty sum included
  IntMultiset odd;
};

EvenOddSums even_odd_sums(const IntSet& m);

struct ResidueSets {
  IntSet x;
  IntSet y;
  IntSet extended;        // the fair extension M'
  std::uint64_t modulus;  // lcm(M' ∪ {n})
};

/// Sets residue equivalent for M' but not for n. Each residue class c mod L
/// of multiplicity μ becomes the progression c, c+L, ..., c+(μ-1)L.
ResidueSets minimal_residue_sets(const IntSet& m, std::uint64_t n);

}  // namespace snorm
