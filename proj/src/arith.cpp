#include "snorm/arith.hpp"

#include <limits>
#include <numeric>

namespace snorm {

BigInt pow(const BigInt& base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp != 0) {
    if ((exp & 1U) != 0) result *= b;
    exp >>= 1U;
    if (exp != 0) b *= b;
  }
  return result;
}

BigInt pow(std::uint64_t base, std::uint64_t exp) {
  BigInt b;
  mpz_set_ui(b.get_mpz_t(), base);
  if (exp <= std::numeric_limits<unsigned long>::max()) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exp));
    return r;
  }
  return pow(b, exp);
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("uint64 multiplication overflow");
  return r;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

std::uint64_t lcm_of(const IntSet& values) {
  std::uint64_t l = 1;
  for (auto v : values) {
    if (v == 0) throw std::invalid_argument("lcm of a set containing 0");
    l = checked_mul(l / std::gcd(l, v), v);
  }
  return l;
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_fraction(std::string_view text) {
  const auto slash = text.find('/');
  Rational q;
  if (slash == std::string_view::npos) {
    q = Rational(parse_bigint(text));
  } else {
    const BigInt den = parse_bigint(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    q = Rational(parse_bigint(text.substr(0, slash)), den);
  }
  q.canonicalize();
  return q;
}

BigInt parse_bigint(std::string_view text) {
  BigInt v;
  const std::string s(text);
  if (s.empty() || v.set_str(s, 10) != 0)
    throw std::invalid_argument("not a decimal integer: '" + s + "'");
  return v;
}

double to_double(const Rational& q) { return mpq_get_d(q.get_mpq_t()); }

std::string to_string(const IntSet& values) {
  std::string out = "{";
  bool first = true;
  for (auto v : values) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

}  // namespace snorm
