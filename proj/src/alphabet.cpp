#include "snorm/alphabet.hpp"

#include <algorithm>
#include <stdexcept>

namespace snorm {
namespace {

constexpr std::size_t kInitialWindow = 4;
constexpr std::size_t kMaxWindow = std::size_t{1} << 16;

DigitBlock block_of(const BigInt& value, std::uint32_t base, std::uint64_t len) {
  std::vector<Digit> digits(len, 0);
  BigInt rest = value;
  for (std::uint64_t i = len; i-- > 0;) {
    digits[i] = static_cast<Digit>(mpz_fdiv_ui(rest.get_mpz_t(), base));
    rest /= base;
  }
  return DigitBlock(base, std::move(digits));
}

// One distinct chunk of the window with its multiplicity in W.
struct Slot {
  DigitBlock chunk;
  std::uint64_t count;
  bool odd;
};

struct Multiset {
  std::vector<std::uint64_t> count;
  std::uint64_t total = 0;
  std::uint64_t odd_total = 0;
};

// asc(R \ f) + f, where f is the largest slot with the requested parity.
// Returns false if R has no such slot.
bool least_with_last(const std::vector<Slot>& slots, Multiset r, bool want_odd, std::vector<std::size_t>& out) {
  std::size_t f = slots.size();
  for (std::size_t i = slots.size(); i-- > 0;) {
    if (r.count[i] > 0 && slots[i].odd == want_odd) {
      f = i;
      break;
    }
  }
  if (f == slots.size()) return false;
  --r.count[f];
  for (std::size_t i = 0; i < slots.size(); ++i) out.insert(out.end(), r.count[i], i);
  out.push_back(f);
  return true;
}

struct Window {
  std::vector<Slot> slots;  // ascending
  BigInt prefix_chunks;
  bool whole = false;       // the window holds every chunk of W
};

// Top `size` distinct chunks of W, v skipped since it has multiplicity 0.
Window top_window(const AlphabetU& a, std::size_t size) {
  const BigInt top = pow(BigInt(a.s), a.ell);
  const BigInt u = a.pair.u.value();
  const BigInt v = a.pair.v.value();
  Window w;
  BigInt value = top;
  while (w.slots.size() < size && value > 0) {
    --value;
    if (value == v) continue;
    DigitBlock chunk = block_of(value, a.s, a.ell);
    const bool odd = !chunk.ends_even();
    w.slots.push_back({std::move(chunk), (value == u ? 4 : 2) * a.c, odd});
  }
  std::reverse(w.slots.begin(), w.slots.end());
  w.whole = value == 0 || (value == 1 && v == 0);
  // Chunks below the threshold: 2c each, u doubled, v absent.
  w.prefix_chunks = BigInt(2 * a.c) * value;
  if (u < value) w.prefix_chunks += 2 * a.c;
  if (v < value) w.prefix_chunks -= 2 * a.c;
  return w;
}

ExcludedBlock make_excluded(const Window& w, const std::vector<std::size_t>& seq) {
  ExcludedBlock x;
  x.threshold = w.slots.front().chunk;
  x.prefix_chunks = w.prefix_chunks;
  x.tail.reserve(seq.size());
  for (auto i : seq) x.tail.push_back(w.slots[i].chunk);
  return x;
}

// Least arrangement of the window with an odd last chunk that exceeds z.
bool next_odd_after(const std::vector<Slot>& slots, const std::vector<std::size_t>& z, std::vector<std::size_t>& out) {
  Multiset r;
  r.count.assign(slots.size(), 0);
  for (std::size_t i = z.size(); i-- > 0;) {
    ++r.count[z[i]];
    ++r.total;
    if (slots[z[i]].odd) ++r.odd_total;
    for (std::size_t c = z[i] + 1; c < slots.size(); ++c) {
      if (r.count[c] == 0) continue;
      Multiset rest = r;
      --rest.count[c];
      --rest.total;
      if (slots[c].odd) --rest.odd_total;
      const bool ok = rest.total == 0 ? slots[c].odd : rest.odd_total > 0;
      if (!ok) continue;
      out.assign(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(i));
      out.push_back(c);
      if (rest.total > 0) least_with_last(slots, rest, true, out);
      return true;
    }
  }
  return false;
}

void build_excluded(AlphabetU& a) {
  const bool even_base = a.s % 2 == 0;
  for (std::size_t size = kInitialWindow;; size *= 2) {
    const Window w = top_window(a, size);
    Multiset all;
    all.count.resize(w.slots.size());
    for (std::size_t i = 0; i < w.slots.size(); ++i) {
      all.count[i] = w.slots[i].count;
      all.total += w.slots[i].count;
      if (w.slots[i].odd) all.odd_total += w.slots[i].count;
    }
    std::vector<std::size_t> z;
    if (!even_base) {
      // Every arrangement has an even digit sum, hence is even.
      for (std::size_t i = 0; i < w.slots.size(); ++i) z.insert(z.end(), all.count[i], i);
      a.z = make_excluded(w, z);
      return;
    }
    std::vector<std::size_t> zt;
    if (least_with_last(w.slots, all, false, z) && next_odd_after(w.slots, z, zt)) {
      a.z = make_excluded(w, z);
      a.z_tilde = make_excluded(w, zt);
      return;
    }
    if (w.whole || size >= kMaxWindow)
      throw InternalError("no admissible excluded pair for s=" + std::to_string(a.s) + ", n=" + std::to_string(a.n));
  }
}

// #{ w < limit : chunk k of w equals d } for every d, summed over the ℓ/m aligned chunks.
std::vector<BigInt> below_histogram(const BigInt& limit, std::uint32_t s, std::uint64_t ell, std::uint64_t m) {
  const std::uint64_t cells = checked_pow(s, m);
  const DigitBlock lim = block_of(limit, s, ell);
  std::vector<BigInt> hist(cells);
  for (std::uint64_t k = 0; k < ell / m; ++k) {
    BigInt high = 0;
    for (std::uint64_t i = 0; i < k * m; ++i) high = high * s + lim[i];
    std::uint64_t chunk = 0;
    for (std::uint64_t i = k * m; i < (k + 1) * m; ++i) chunk = chunk * s + lim[i];
    BigInt low = 0;
    for (std::uint64_t i = (k + 1) * m; i < ell; ++i) low = low * s + lim[i];
    const BigInt span = pow(BigInt(s), ell - (k + 1) * m);
    const BigInt base_count = high * span;
    for (std::uint64_t d = 0; d < cells; ++d) {
      hist[d] += base_count;
      if (d < chunk) hist[d] += span;
    }
    hist[chunk] += low;
  }
  return hist;
}

std::vector<std::uint64_t> block_chunks(const DigitBlock& w, std::uint64_t m) {
  return chunk_values(w.digits(), w.base(), m);
}

}  // namespace

std::uint64_t AlphabetU::block_length() const {
  if (!materialized()) throw std::invalid_argument("alphabet of block length " + ell_u.get_str() + " is not materialized");
  return ell_u.get_ui();
}

bool AlphabetU::contains(const DigitBlock& w) const {
  if (w.base() != s || w.size() != block_length()) return false;
  if (w == *z_digits) return false;
  return !(z_tilde_digits && w == *z_tilde_digits);
}

std::string AlphabetU::eps_formula() const {
  const std::string cdef = to_fraction_string(bias.c_def);
  const std::string lu = ell_u.get_str();
  return cdef + "/(2*(" + std::to_string(s) + "^" + lu + "-" + std::to_string(removed()) + ")*" + lu + "/" +
         std::to_string(n) + ")";
}

std::vector<BigInt> chunk_histogram(const AlphabetU& a, const ExcludedBlock& x, std::uint64_t m) {
  if (m == 0 || a.ell % m != 0) throw std::invalid_argument("chunk length must divide the W-block length");
  const BigInt t = x.threshold.value();
  std::vector<BigInt> hist = below_histogram(t, a.s, a.ell, m);
  for (auto& h : hist) h *= 2 * a.c;
  const bool u_below = a.pair.u.value() < t;
  const bool v_below = a.pair.v.value() < t;
  if (u_below) {
    for (auto d : block_chunks(a.pair.u, m)) hist[d] += 2 * a.c;
  }
  if (v_below) {
    for (auto d : block_chunks(a.pair.v, m)) hist[d] -= 2 * a.c;
  }
  for (const auto& chunk : x.tail) {
    for (auto d : block_chunks(chunk, m)) hist[d] += 1;
  }
  return hist;
}

BiasConstants bias_constants(const AlphabetU& a) {
  const std::uint64_t cells = checked_pow(a.s, a.n);
  std::vector<BigInt> occ = chunk_histogram(a, a.z, a.n);
  if (a.z_tilde) {
    const auto other = chunk_histogram(a, *a.z_tilde, a.n);
    for (std::uint64_t d = 0; d < cells; ++d) occ[d] += other[d];
  }
  std::uint64_t best = 0;
  for (std::uint64_t d = 1; d < cells; ++d) {
    if (occ[d] > occ[best]) best = d;
  }
  // Share of one removed block in the full count: (ℓ_U/n)/s^n.
  const BigInt share = a.ell_u / BigInt(a.n) / BigInt(cells);
  BiasConstants out;
  out.d = block_of(best, a.s, a.n);
  out.c_def = Rational(occ[best] - BigInt(a.removed()) * share);
  if (out.c_def <= 0) throw InternalError("excluded blocks are not biased for n=" + std::to_string(a.n));
  const BigInt bits = a.ell_u * BigInt(mpz_sizeinbase(BigInt(a.s).get_mpz_t(), 2));
  if (bits <= kExactEpsBits) {
    const BigInt size = pow(BigInt(a.s), a.ell_u.get_ui()) - a.removed();
    out.eps = out.c_def / Rational(2 * size * a.ell_u, BigInt(a.n));
    out.eps->canonicalize();
  }
  return out;
}

DigitBlock materialize(const AlphabetU& a, const ExcludedBlock& x) {
  if (a.ell_u > kMaterializeLimit) throw std::length_error("block of length " + a.ell_u.get_str() + " is too long to write out");
  std::vector<Digit> digits;
  digits.reserve(a.ell_u.get_ui());
  const BigInt u = a.pair.u.value();
  const BigInt v = a.pair.v.value();
  for (BigInt value = 0; value < x.threshold.value(); ++value) {
    if (value == v) continue;
    const auto chunk = block_of(value, a.s, a.ell);
    const std::uint64_t copies = (value == u ? 4 : 2) * a.c;
    for (std::uint64_t i = 0; i < copies; ++i) digits.insert(digits.end(), chunk.digits().begin(), chunk.digits().end());
  }
  for (const auto& chunk : x.tail) digits.insert(digits.end(), chunk.digits().begin(), chunk.digits().end());
  if (digits.size() != a.ell_u.get_ui()) throw InternalError("excluded block has the wrong length");
  return DigitBlock(a.s, std::move(digits));
}

bool excluded_less(const ExcludedBlock& a, const ExcludedBlock& b) {
  if (a.threshold != b.threshold || a.prefix_chunks != b.prefix_chunks)
    throw std::invalid_argument("excluded blocks do not share a prefix");
  return a.tail < b.tail;
}

AlphabetU balanced_alphabet(std::uint32_t s, const IntSet& m, std::uint64_t n, std::uint64_t c) {
  if (c == 0) throw std::invalid_argument("c must be positive");
  AlphabetU a;
  a.s = s;
  a.m = m;
  a.n = n;
  a.c = c;
  if (s == 2 && n == 1) {
    if (!m.empty()) throw std::invalid_argument("1 divides every element of M");
    a.pair.u = DigitBlock(2, {0, 1});
    a.pair.v = DigitBlock(2, {1, 1});
    a.pair.cell_len = 2;
  } else {
    a.pair = inequivalent_block_pair(s, m, n);
  }
  a.ell = a.pair.u.size();
  a.ell_u = BigInt(2 * c) * BigInt(a.ell) * pow(BigInt(s), a.ell);
  build_excluded(a);
  a.bias = bias_constants(a);
  if (a.ell_u <= kMaterializeLimit) {
    a.z_digits = materialize(a, a.z);
    if (a.z_tilde) a.z_tilde_digits = materialize(a, *a.z_tilde);
  }
  return a;
}

}  // namespace snorm
