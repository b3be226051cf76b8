#include "snorm/radix.hpp"

#include <stdexcept>
#include <string>

#include "snorm/certified.hpp"

namespace snorm {
namespace {

constexpr std::uint32_t kGmpMaxBase = 62;

Digit gmp_digit(char ch) {
  if (ch >= '0' && ch <= '9') return static_cast<Digit>(ch - '0');
  if (ch >= 'A' && ch <= 'Z') return static_cast<Digit>(ch - 'A' + 10);
  return static_cast<Digit>(ch - 'a' + 36);
}

// The len lowest base-r digits of v, most significant first.
std::vector<Digit> low_digits(const BigInt& v, std::uint32_t r, std::uint64_t len) {
  std::vector<Digit> out(len, 0);
  if (r <= kGmpMaxBase) {
    // GMP writes 0-9a-z up to base 36 and 0-9A-Za-z above.
    const std::string text = v.get_str(static_cast<int>(r));
    if (text == "0") return out;
    if (text.size() > len) throw InternalError("digit window overflow");
    const std::size_t pad = len - text.size();
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char ch = text[i];
      out[pad + i] = r <= 36 && ch >= 'a' ? static_cast<Digit>(ch - 'a' + 10) : gmp_digit(ch);
    }
    return out;
  }
  BigInt rest = v;
  for (std::uint64_t i = len; i-- > 0;) {
    out[i] = static_cast<Digit>(mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), r));
  }
  if (rest != 0) throw InternalError("digit window overflow");
  return out;
}

void require_unit(const Rational& x) {
  if (x < 0 || x >= 1) throw std::invalid_argument("number must lie in [0,1)");
}

}  // namespace

Rational SAdicNumber::value() const {
  Rational q(numerator, pow(base, prec));
  q.canonicalize();
  return q;
}

SAdicNumber SAdicNumber::extended(std::uint64_t new_prec) const {
  if (new_prec < prec) throw std::invalid_argument("cannot lower the precision");
  return {base, new_prec, numerator * pow(base, new_prec - prec)};
}

void SAdicNumber::validate() const {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  if (numerator < 0 || numerator >= pow(base, prec)) throw std::invalid_argument("numerator out of range");
}

Rational AdicInterval::lo() const {
  Rational q(index, pow(base, prec));
  q.canonicalize();
  return q;
}

Rational AdicInterval::hi() const {
  Rational q(index + 1, pow(base, prec));
  q.canonicalize();
  return q;
}

Rational AdicInterval::length() const { return Rational(BigInt(1), pow(base, prec)); }

std::uint64_t nat_pos(std::uint64_t b, const BigInt& r) { return certified::ceil_div_ln(b, r); }

BigInt scaled_floor(const Rational& x, const BigInt& r, std::uint64_t j) {
  BigInt num = x.get_num() * pow(r, j);
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
  return out;
}

DigitBlock extract_digits(const Rational& x, std::uint32_t r, std::uint64_t i0, std::uint64_t i1) {
  if (r < 2) throw std::invalid_argument("base must be at least 2");
  if (i1 < i0) throw std::invalid_argument("empty digit window");
  require_unit(x);
  const BigInt window = pow(BigInt(r), i1 - i0);
  BigInt low = scaled_floor(x, BigInt(r), i1);
  mpz_fdiv_r(low.get_mpz_t(), low.get_mpz_t(), window.get_mpz_t());
  return DigitBlock(r, low_digits(low, r, i1 - i0));
}

DigitBlock extract_digits(const SAdicNumber& x, std::uint32_t r, std::uint64_t i0, std::uint64_t i1) {
  return extract_digits(x.value(), r, i0, i1);
}

AdicInterval sadic_subinterval(const Rational& lo, const Rational& hi, const BigInt& s) {
  if (s < 2) throw std::invalid_argument("base must be at least 2");
  if (lo < 0 || hi > 1 || !(lo < hi)) throw std::invalid_argument("need 0 <= lo < hi <= 1");
  const Rational len = hi - lo;
  std::uint64_t m = 1;
  BigInt scale = s;
  while (Rational(BigInt(1), scale) >= len) {
    ++m;
    scale *= s;
  }
  // First grid point at or after lo.
  BigInt a;
  {
    BigInt num = lo.get_num() * scale;
    mpz_cdiv_q(a.get_mpz_t(), num.get_mpz_t(), lo.get_den().get_mpz_t());
  }
  if (Rational(a + 1, scale) <= hi) return {s, m, a};
  // a/s^m is the only grid point in [lo,hi); one child next to it fits.
  const BigInt finer = scale * s;
  const BigInt left = s * a - 1;
  if (a > 0 && Rational(left, finer) >= lo) return {s, m + 1, left};
  if (Rational(s * a + 1, finer) <= hi) return {s, m + 1, s * a};
  throw InternalError("no s-adic subinterval found");
}

std::uint64_t position_gap(const BigInt& s, const BigInt& t) { return certified::ceil_ln(s * t * t * t); }

TadicChoice leftmost_tadic_subinterval(const AdicInterval& iv, std::uint64_t b, const BigInt& t) {
  if (iv.prec != nat_pos(b, iv.base)) throw std::invalid_argument("interval precision must be <b;s>");
  TadicChoice out;
  out.a = b + position_gap(iv.base, t);
  const std::uint64_t p = nat_pos(out.a, t);
  const BigInt scale = pow(t, p);
  const Rational lo = iv.lo();
  BigInt k;
  BigInt num = lo.get_num() * scale;
  mpz_cdiv_q(k.get_mpz_t(), num.get_mpz_t(), lo.get_den().get_mpz_t());
  if (Rational(k + 1, scale) > iv.hi()) throw InternalError("no t-adic subinterval of the promised length");
  out.y = {t, p, k};
  return out;
}

}  // namespace snorm
