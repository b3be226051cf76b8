#pragma once

// Ceilings of transcendental quantities, decided by MPFR enclosures with
// directed rounding. Every quantity here is irrational for the admissible
// inputs, so refining the precision always separates it from the integers.

#include <cstdint>

#include "snorm/arith.hpp"

namespace snorm::certified {

/// ⌈b / ln base⌉ for base ≥ 2; 0 when b = 0.
std::uint64_t ceil_div_ln(std::uint64_t b, const BigInt& base);

/// ⌈ln n⌉ for n ≥ 2.
std::uint64_t ceil_ln(const BigInt& n);

/// ⌈x · ln base⌉ for rational x > 0 and base ≥ 2.
BigInt ceil_mul_ln(const Rational& x, const BigInt& base);

/// ⌈12 / (eps³ π²)⌉ for rational eps > 0.
BigInt ceil_leveque_k(const Rational& eps);

/// A rational q = ⌊10^digits · ln(n − 2)/ln n⌋ / 10^digits, so q ≤ ln(n − 2)/ln n; n ≥ 4.
Rational log_ratio_lower(const BigInt& n, unsigned digits);

/// True iff base^exp ≥ e^b. Powers up to 2^16 bits are formed exactly and
/// compared with an enclosure of e^b; larger ones go through exp·ln(base).
/// Used as the independent oracle for positions in nats.
bool power_at_least_exp(const BigInt& base, std::uint64_t exp, std::uint64_t b);

}  // namespace snorm::certified
