#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace snorm {

using BigInt = mpz_class;
using Rational = mpq_class;
using IntSet = std::set<std::uint64_t>;

/// Raised when a result the mathematics guarantees fails to materialize.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

BigInt pow(const BigInt& base, std::uint64_t exp);
BigInt pow(std::uint64_t base, std::uint64_t exp);

/// Exact base^exp as uint64; throws std::overflow_error if it does not fit.
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

/// lcm of all elements; lcm of the empty set is 1.
std::uint64_t lcm_of(const IntSet& values);

/// Canonical "p/q" rendering; integers keep the "/1".
std::string to_fraction_string(const Rational& q);
Rational parse_fraction(std::string_view text);

BigInt parse_bigint(std::string_view text);

/// Double approximation, for report columns only.
double to_double(const Rational& q);

/// Renders a set as "{1,2,3}".
std::string to_string(const IntSet& values);

}  // namespace snorm
