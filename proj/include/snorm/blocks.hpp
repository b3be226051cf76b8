#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "snorm/arith.hpp"
#include "snorm/kernels.hpp"

namespace snorm {

using Digit = std::uint32_t;

/// A finite digit sequence over B_base. Also read as the integer
/// b_0 s^(ℓ-1) + ... + b_(ℓ-1) when ordering blocks of equal length.
class DigitBlock {
 public:
  DigitBlock() = default;
  DigitBlock(std::uint32_t base, std::vector<Digit> digits);

  /// Digits 0-9a-z for bases up to 36; dot-separated decimals above that.
  static DigitBlock parse(std::string_view text, std::uint32_t base);
  std::string str() const;

  std::uint32_t base() const { return base_; }
  std::size_t size() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }
  Digit operator[](std::size_t i) const { return digits_[i]; }
  std::span<const Digit> digits() const { return digits_; }

  BigInt value() const;
  bool ends_even() const { return !digits_.empty() && digits_.back() % 2 == 0; }

  DigitBlock concat(const DigitBlock& tail) const;
  void append(const DigitBlock& tail);

  friend bool operator==(const DigitBlock&, const DigitBlock&) = default;
  /// Lexicographic; for blocks of equal length this is integer order.
  friend std::strong_ordering operator<=>(const DigitBlock& a, const DigitBlock& b);

 private:
  std::uint32_t base_ = 2;
  std::vector<Digit> digits_;
};

/// (w;m): the first ⌊|w|/m⌋ consecutive length-m chunks.
std::vector<DigitBlock> parse_blocks(const DigitBlock& w, std::size_t m);

/// Chunk values of (w;m) as digits of base s^m.
std::vector<std::uint64_t> chunk_values(std::span<const Digit> digits, std::uint32_t base, std::size_t m);

/// max_v |occ(v)/len − 1/#V| over an alphabet {0, ..., alphabet_size-1}.
Rational discrepancy(std::span<const std::uint64_t> items, std::uint64_t alphabet_size);
Rational discrepancy(const DigitBlock& w);
/// D((w;m), B_s^m).
Rational chunk_discrepancy(const DigitBlock& w, std::size_t m);

/// occ((w;m), chunk) where chunk has length m.
std::uint64_t count_chunk(const DigitBlock& w, const DigitBlock& chunk);

bool is_block_equivalent(const DigitBlock& u, const DigitBlock& v, const IntSet& moduli);

/// Every length-m chunk value occurs exactly |w|/(m·s^m) times.
bool is_balanced(const DigitBlock& w, std::size_t m);

struct BlockPair {
  DigitBlock u;
  DigitBlock v;
  IntSet extended;             // M' used for the construction (empty when n = 1)
  std::uint64_t cell_len = 1;  // length of each one-hot cell
};

/// Binary blocks, block equivalent for M' ⊇ M and not for n, of a common
/// length divisible by every element of M' ∪ {n}.
BlockPair inequivalent_block_pair(std::uint32_t base, const IntSet& m, std::uint64_t n);

/// #{ w ∈ V^ℓ : D(w,V) < eps }, by enumeration; refuses more than 2^24 blocks.
std::uint64_t count_low_discrepancy(std::uint64_t alphabet_size, std::uint64_t len, const Rational& eps);

/// How many of `samples` uniform blocks in V^ℓ have D(w,V) < eps. Sample i
/// is drawn from its own seeded stream, so the count ignores the thread count.
std::uint64_t sample_low_discrepancy(std::uint64_t alphabet_size, std::uint64_t len, const Rational& eps,
                                     std::uint64_t samples, std::uint64_t seed, Exec exec = Exec::parallel);

inline constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 24;

}  // namespace snorm
