#pragma once

#include <cstdint>

#include "snorm/arith.hpp"
#include "snorm/blocks.hpp"

namespace snorm {

/// numerator · base^(−prec) ∈ [0, 1).
struct SAdicNumber {
  BigInt base = 2;
  std::uint64_t prec = 0;
  BigInt numerator = 0;

  Rational value() const;
  /// Same number at a higher precision.
  SAdicNumber extended(std::uint64_t new_prec) const;
  void validate() const;

  friend bool operator==(const SAdicNumber&, const SAdicNumber&) = default;
};

/// [index · base^(−prec), (index+1) · base^(−prec)).
struct AdicInterval {
  BigInt base = 2;
  std::uint64_t prec = 0;
  BigInt index = 0;

  Rational lo() const;
  Rational hi() const;
  Rational length() const;
};

/// ⟨b;r⟩ = ⌈b / ln r⌉; 0 for b = 0.
std::uint64_t nat_pos(std::uint64_t b, const BigInt& r);

/// Base-r digits at positions i0+1 … i1 (position j carries r^(−j)).
DigitBlock extract_digits(const SAdicNumber& x, std::uint32_t r, std::uint64_t i0, std::uint64_t i1);
DigitBlock extract_digits(const Rational& x, std::uint32_t r, std::uint64_t i0, std::uint64_t i1);

/// ⌊x · r^j⌋ for x ∈ [0,1) rational; the building block of digit extraction.
BigInt scaled_floor(const Rational& x, const BigInt& r, std::uint64_t j);

/// An s-adic interval inside [lo, hi) of length ≥ (hi − lo)/(2s).
AdicInterval sadic_subinterval(const Rational& lo, const Rational& hi, const BigInt& s);

struct TadicChoice {
  std::uint64_t a = 0;  // b + ⌈ln s + 3 ln t⌉
  SAdicNumber y;        // left end of the leftmost t-adic interval of length t^(−⟨a;t⟩) in iv
};

TadicChoice leftmost_tadic_subinterval(const AdicInterval& iv, std::uint64_t b, const BigInt& t);

/// ⌈ln s + 3 ln t⌉.
std::uint64_t position_gap(const BigInt& s, const BigInt& t);

}  // namespace snorm
