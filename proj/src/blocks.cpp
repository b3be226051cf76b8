#include "snorm/blocks.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <random>
#include <stdexcept>

#include "snorm/residue.hpp"

namespace snorm {
namespace {

constexpr std::uint32_t kMaxCharBase = 36;

char digit_char(Digit d) { return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10)); }

Digit char_digit(char ch) {
  if (ch >= '0' && ch <= '9') return static_cast<Digit>(ch - '0');
  if (ch >= 'a' && ch <= 'z') return static_cast<Digit>(ch - 'a' + 10);
  if (ch >= 'A' && ch <= 'Z') return static_cast<Digit>(ch - 'A' + 10);
  throw std::invalid_argument(std::string("bad digit character '") + ch + "'");
}

void require_same_length(const DigitBlock& u, const DigitBlock& v) {
  if (u.size() != v.size() || u.base() != v.base())
    throw std::invalid_argument("blocks must share base and length");
}

// Chunk multiset of (w;m), chunks compared digit by digit.
std::map<std::vector<Digit>, std::uint64_t> chunk_multiset(const DigitBlock& w, std::size_t m) {
  std::map<std::vector<Digit>, std::uint64_t> out;
  auto digits = w.digits();
  for (std::size_t i = 0; i + m <= digits.size(); i += m) {
    ++out[std::vector<Digit>(digits.begin() + static_cast<std::ptrdiff_t>(i),
                             digits.begin() + static_cast<std::ptrdiff_t>(i + m))];
  }
  return out;
}

}  // namespace

DigitBlock::DigitBlock(std::uint32_t base, std::vector<Digit> digits) : base_(base), digits_(std::move(digits)) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  for (auto d : digits_) {
    if (d >= base) throw std::invalid_argument("digit " + std::to_string(d) + " out of range for base " + std::to_string(base));
  }
}

DigitBlock DigitBlock::parse(std::string_view text, std::uint32_t base) {
  std::vector<Digit> digits;
  if (base <= kMaxCharBase) {
    digits.reserve(text.size());
    for (char ch : text) digits.push_back(char_digit(ch));
  } else if (!text.empty()) {
    std::size_t pos = 0;
    while (true) {
      const std::size_t dot = text.find('.', pos);
      const std::string_view part = text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
      Digit d = 0;
      auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), d);
      if (ec != std::errc() || ptr != part.data() + part.size() || part.empty())
        throw std::invalid_argument("bad digit '" + std::string(part) + "'");
      digits.push_back(d);
      if (dot == std::string_view::npos) break;
      pos = dot + 1;
    }
  }
  return DigitBlock(base, std::move(digits));
}

std::string DigitBlock::str() const {
  std::string out;
  if (base_ <= kMaxCharBase) {
    out.reserve(digits_.size());
    for (auto d : digits_) out.push_back(digit_char(d));
    return out;
  }
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i) out.push_back('.');
    out += std::to_string(digits_[i]);
  }
  return out;
}

BigInt DigitBlock::value() const {
  if (digits_.empty()) return 0;
  if (base_ <= kMaxCharBase) return BigInt(str(), static_cast<int>(base_));
  BigInt v = 0;
  for (auto d : digits_) v = v * base_ + d;
  return v;
}

DigitBlock DigitBlock::concat(const DigitBlock& tail) const {
  DigitBlock out = *this;
  out.append(tail);
  return out;
}

void DigitBlock::append(const DigitBlock& tail) {
  if (tail.base_ != base_) throw std::invalid_argument("cannot concatenate blocks of different bases");
  digits_.insert(digits_.end(), tail.digits_.begin(), tail.digits_.end());
}

std::strong_ordering operator<=>(const DigitBlock& a, const DigitBlock& b) {
  if (auto c = a.base_ <=> b.base_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.digits_.begin(), a.digits_.end(), b.digits_.begin(),
                                                b.digits_.end());
}

std::vector<DigitBlock> parse_blocks(const DigitBlock& w, std::size_t m) {
  if (m == 0) throw std::invalid_argument("chunk length must be positive");
  std::vector<DigitBlock> out;
  auto digits = w.digits();
  out.reserve(digits.size() / m);
  for (std::size_t i = 0; i + m <= digits.size(); i += m) {
    out.emplace_back(w.base(), std::vector<Digit>(digits.begin() + static_cast<std::ptrdiff_t>(i),
                                                  digits.begin() + static_cast<std::ptrdiff_t>(i + m)));
  }
  return out;
}

std::vector<std::uint64_t> chunk_values(std::span<const Digit> digits, std::uint32_t base, std::size_t m) {
  if (m == 0) throw std::invalid_argument("chunk length must be positive");
  checked_pow(base, m);  // chunk values must fit
  std::vector<std::uint64_t> out;
  out.reserve(digits.size() / m);
  for (std::size_t i = 0; i + m <= digits.size(); i += m) {
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < m; ++k) v = v * base + digits[i + k];
    out.push_back(v);
  }
  return out;
}

Rational discrepancy(std::span<const std::uint64_t> items, std::uint64_t alphabet_size) {
  if (items.empty()) throw std::invalid_argument("discrepancy of an empty sequence");
  if (alphabet_size == 0) throw std::invalid_argument("empty alphabet");
  std::map<std::uint64_t, std::uint64_t> counts;
  for (auto v : items) {
    if (v >= alphabet_size) throw std::invalid_argument("item outside the alphabet");
    ++counts[v];
  }
  // |occ/len − 1/V| = |occ·V − len| / (len·V)
  const BigInt len(static_cast<unsigned long>(items.size()));
  const BigInt size(static_cast<unsigned long>(alphabet_size));
  BigInt worst = counts.size() < alphabet_size ? len : BigInt(0);
  for (const auto& [v, occ] : counts) {
    BigInt dev = BigInt(static_cast<unsigned long>(occ)) * size - len;
    if (dev < 0) dev = -dev;
    if (dev > worst) worst = dev;
  }
  Rational out(worst, len * size);
  out.canonicalize();
  return out;
}

Rational discrepancy(const DigitBlock& w) {
  std::vector<std::uint64_t> items(w.digits().begin(), w.digits().end());
  return discrepancy(items, w.base());
}

Rational chunk_discrepancy(const DigitBlock& w, std::size_t m) {
  return discrepancy(chunk_values(w.digits(), w.base(), m), checked_pow(w.base(), m));
}

std::uint64_t count_chunk(const DigitBlock& w, const DigitBlock& chunk) {
  const std::size_t m = chunk.size();
  if (m == 0) throw std::invalid_argument("chunk must be non-empty");
  auto digits = w.digits();
  auto pattern = chunk.digits();
  std::uint64_t count = 0;
  for (std::size_t i = 0; i + m <= digits.size(); i += m) {
    if (std::equal(pattern.begin(), pattern.end(), digits.begin() + static_cast<std::ptrdiff_t>(i))) ++count;
  }
  return count;
}

bool is_block_equivalent(const DigitBlock& u, const DigitBlock& v, const IntSet& moduli) {
  require_same_length(u, v);
  const std::uint64_t l = lcm_of(moduli);
  if (u.size() % l != 0) throw std::invalid_argument("block length must be a multiple of lcm(M)");
  return std::all_of(moduli.begin(), moduli.end(),
                     [&](std::uint64_t m) { return chunk_multiset(u, m) == chunk_multiset(v, m); });
}

bool is_balanced(const DigitBlock& w, std::size_t m) {
  if (m == 0 || w.size() % m != 0) throw std::invalid_argument("chunk length must divide the block length");
  const std::uint64_t cells = checked_pow(w.base(), m);
  const std::uint64_t chunks = w.size() / m;
  if (chunks % cells != 0) return false;
  const auto ms = chunk_multiset(w, m);
  if (ms.size() != cells) return false;
  const std::uint64_t each = chunks / cells;
  return std::all_of(ms.begin(), ms.end(), [&](const auto& kv) { return kv.second == each; });
}

BlockPair inequivalent_block_pair(std::uint32_t base, const IntSet& m, std::uint64_t n) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  if (n == 0) throw std::invalid_argument("n must be positive");
  BlockPair out;
  if (n == 1) {
    if (!m.empty()) throw std::invalid_argument("1 divides every element of M");
    out.u = DigitBlock(base, {0});
    out.v = DigitBlock(base, {1});
    return out;
  }
  const ResidueSets sets = minimal_residue_sets(m, n);
  const std::uint64_t top = std::max(*sets.x.rbegin(), *sets.y.rbegin());
  out.cell_len = (top / sets.modulus + 1) * sets.modulus;
  out.extended = sets.extended;
  auto encode = [&](const IntSet& xs) {
    std::vector<Digit> digits(xs.size() * out.cell_len, 0);
    std::size_t cell = 0;
    for (auto x : xs) digits[cell++ * out.cell_len + x] = 1;
    return DigitBlock(base, std::move(digits));
  };
  out.u = encode(sets.x);
  out.v = encode(sets.y);
  return out;
}

std::uint64_t count_low_discrepancy(std::uint64_t alphabet_size, std::uint64_t len, const Rational& eps) {
  if (alphabet_size < 1 || len < 1) throw std::invalid_argument("alphabet and length must be positive");
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < len; ++i) {
    if (total > kEnumerationLimit / alphabet_size) throw std::length_error("enumeration exceeds 2^24 blocks");
    total *= alphabet_size;
  }
  std::vector<std::uint64_t> word(len, 0);
  std::uint64_t good = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (std::uint64_t i = 0; i < len; ++i) {
      word[i] = rest % alphabet_size;
      rest /= alphabet_size;
    }
    if (discrepancy(word, alphabet_size) < eps) ++good;
  }
  return good;
}

std::uint64_t sample_low_discrepancy(std::uint64_t alphabet_size, std::uint64_t len, const Rational& eps,
                                     std::uint64_t samples, std::uint64_t seed, Exec exec) {
  if (alphabet_size < 1 || len < 1) throw std::invalid_argument("alphabet and length must be positive");
  constexpr std::uint64_t kChunk = 1024;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  const auto good = map_indices<std::uint64_t>(
      chunks,
      [&](std::uint64_t c) {
        std::vector<std::uint64_t> word(len);
        std::uint64_t hits = 0;
        for (std::uint64_t i = c * kChunk; i < std::min(samples, (c + 1) * kChunk); ++i) {
          std::mt19937_64 rng(mix64(seed ^ mix64(i)));
          for (auto& v : word) v = uniform_below(rng, alphabet_size);
          if (discrepancy(word, alphabet_size) < eps) ++hits;
        }
        return hits;
      },
      exec);
  std::uint64_t total = 0;
  for (auto g : good) total += g;
  return total;
}

}  // namespace snorm
