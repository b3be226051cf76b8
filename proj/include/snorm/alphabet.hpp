#pragma once

// The Cantor digit alphabet U: every length-ℓ_U block over B_s except one
// (s odd) or two (s even) excluded blocks z, z̃. Both are arrangements of
// the chunk multiset W, so they are balanced wherever u and v are block
// equivalent and jointly biased towards the chunks u has more of than v.
//
// ℓ_U = 2cℓs^ℓ is astronomically large for most inputs, so an excluded
// block is stored as the ascending run of every W-chunk below a threshold
// followed by an explicit tail.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "snorm/arith.hpp"
#include "snorm/blocks.hpp"

namespace snorm {

struct ExcludedBlock {
  DigitBlock threshold;          // every W-chunk strictly below this comes first, ascending
  BigInt prefix_chunks;          // how many chunks that run holds
  std::vector<DigitBlock> tail;  // explicit remainder, each of length ℓ

  bool ends_even() const { return tail.back().ends_even(); }
};

struct BiasConstants {
  DigitBlock d;
  Rational c_def;
  std::optional<Rational> eps;  // absent when s^ℓ_U is too large to write down
};

struct AlphabetU {
  std::uint32_t s = 2;
  IntSet m;
  std::uint64_t n = 1;
  std::uint64_t c = 1;
  BlockPair pair;         // u, v and the Lemma 4 data
  std::uint64_t ell = 1;  // |u| = |v|
  BigInt ell_u;           // 2cℓs^ℓ
  ExcludedBlock z;
  std::optional<ExcludedBlock> z_tilde;
  BiasConstants bias;
  std::optional<DigitBlock> z_digits;  // present when ℓ_U ≤ kMaterializeLimit
  std::optional<DigitBlock> z_tilde_digits;

  std::uint64_t removed() const { return z_tilde ? 2 : 1; }
  bool materialized() const { return z_digits.has_value(); }
  /// ℓ_U as a machine integer; throws if the alphabet is not materialized.
  std::uint64_t block_length() const;
  /// Membership in U for a block of length ℓ_U.
  bool contains(const DigitBlock& w) const;
  /// Human-readable ε, exact when known.
  std::string eps_formula() const;
};

inline constexpr std::uint64_t kMaterializeLimit = std::uint64_t{1} << 22;
inline constexpr std::uint64_t kExactEpsBits = std::uint64_t{1} << 20;

AlphabetU balanced_alphabet(std::uint32_t s, const IntSet& m, std::uint64_t n, std::uint64_t c);

/// Recomputes (d, c_def, ε) from the excluded blocks' chunk histograms.
BiasConstants bias_constants(const AlphabetU& alphabet);

/// Histogram of (x;m) for x an excluded block, indexed by chunk value; m | ℓ.
/// Computed from the implicit representation, never by expanding x.
std::vector<BigInt> chunk_histogram(const AlphabetU& alphabet, const ExcludedBlock& x, std::uint64_t m);

/// Full digits of an excluded block; refuses blocks longer than kMaterializeLimit.
DigitBlock materialize(const AlphabetU& alphabet, const ExcludedBlock& x);

/// z < z̃ as integers, decided on the implicit representation.
bool excluded_less(const ExcludedBlock& a, const ExcludedBlock& b);

}  // namespace snorm
