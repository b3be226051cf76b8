#include "snorm/certified.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace snorm::certified {
namespace {

constexpr mpfr_prec_t kStartPrec = 64;
constexpr mpfr_prec_t kMaxPrec = mpfr_prec_t{1} << 22;
// Beyond this size the power is compared through its logarithm instead.
constexpr std::uint64_t kExactPowerBits = std::uint64_t{1} << 16;

class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Real() { mpfr_clear(v_); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

BigInt ceil_of(const Real& x) {
  BigInt z;
  mpfr_get_z(z.get_mpz_t(), x.get(), MPFR_RNDU);
  return z;
}

// [lo, hi] ∋ ln n.
void ln_bounds(const BigInt& n, Real& lo, Real& hi) {
  mpfr_set_z(lo.get(), n.get_mpz_t(), MPFR_RNDD);
  mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_set_z(hi.get(), n.get_mpz_t(), MPFR_RNDU);
  mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
}

// Runs `bounds(prec, lo, hi)` at doubling precision until ⌈lo⌉ = ⌈hi⌉.
template <class Bounds>
BigInt refine_ceil(Bounds&& bounds, const char* what) {
  for (mpfr_prec_t prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
    Real lo(prec);
    Real hi(prec);
    bounds(prec, lo, hi);
    BigInt cl = ceil_of(lo);
    if (cl == ceil_of(hi)) return cl;
  }
  throw InternalError(std::string("could not separate ") + what + " from an integer");
}

void require_base(const BigInt& base) {
  if (base < 2) throw std::invalid_argument("logarithm base must be at least 2");
}

}  // namespace

std::uint64_t ceil_div_ln(std::uint64_t b, const BigInt& base) {
  require_base(base);
  if (b == 0) return 0;
  const BigInt c = refine_ceil(
      [&](mpfr_prec_t prec, Real& lo, Real& hi) {
        Real ln_lo(prec);
        Real ln_hi(prec);
        ln_bounds(base, ln_lo, ln_hi);
        mpfr_set_uj(lo.get(), b, MPFR_RNDN);  // exact: prec ≥ 64
        mpfr_set_uj(hi.get(), b, MPFR_RNDN);
        mpfr_div(lo.get(), lo.get(), ln_hi.get(), MPFR_RNDD);
        mpfr_div(hi.get(), hi.get(), ln_lo.get(), MPFR_RNDU);
      },
      "b/ln r");
  return c.get_ui();
}

std::uint64_t ceil_ln(const BigInt& n) {
  require_base(n);
  const BigInt c = refine_ceil([&](mpfr_prec_t, Real& lo, Real& hi) { ln_bounds(n, lo, hi); }, "ln n");
  return c.get_ui();
}

BigInt ceil_mul_ln(const Rational& x, const BigInt& base) {
  require_base(base);
  if (x <= 0) throw std::invalid_argument("ceil_mul_ln needs a positive factor");
  return refine_ceil(
      [&](mpfr_prec_t prec, Real& lo, Real& hi) {
        Real ln_lo(prec);
        Real ln_hi(prec);
        ln_bounds(base, ln_lo, ln_hi);
        mpfr_set_q(lo.get(), x.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi.get(), x.get_mpq_t(), MPFR_RNDU);
        mpfr_mul(lo.get(), lo.get(), ln_lo.get(), MPFR_RNDD);
        mpfr_mul(hi.get(), hi.get(), ln_hi.get(), MPFR_RNDU);
      },
      "x ln r");
}

BigInt ceil_leveque_k(const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  const Rational cube = eps * eps * eps;
  return refine_ceil(
      [&](mpfr_prec_t prec, Real& lo, Real& hi) {
        Real den_lo(prec);
        Real den_hi(prec);
        mpfr_const_pi(den_lo.get(), MPFR_RNDD);
        mpfr_sqr(den_lo.get(), den_lo.get(), MPFR_RNDD);
        mpfr_mul_q(den_lo.get(), den_lo.get(), cube.get_mpq_t(), MPFR_RNDD);
        mpfr_const_pi(den_hi.get(), MPFR_RNDU);
        mpfr_sqr(den_hi.get(), den_hi.get(), MPFR_RNDU);
        mpfr_mul_q(den_hi.get(), den_hi.get(), cube.get_mpq_t(), MPFR_RNDU);
        mpfr_ui_div(lo.get(), 12, den_hi.get(), MPFR_RNDD);
        mpfr_ui_div(hi.get(), 12, den_lo.get(), MPFR_RNDU);
      },
      "12/(eps^3 pi^2)");
}

Rational log_ratio_lower(const BigInt& n, unsigned digits) {
  if (n < 4) throw std::invalid_argument("log_ratio_lower needs n >= 4");
  constexpr mpfr_prec_t prec = 192;
  Real num(prec);
  Real den(prec);
  Real scratch(prec);
  ln_bounds(BigInt(n - 2), num, scratch);  // num ≤ ln(n − 2)
  ln_bounds(n, scratch, den);              // den ≥ ln n
  mpfr_div(num.get(), num.get(), den.get(), MPFR_RNDD);
  const BigInt scale = pow(BigInt(10), digits);
  mpfr_mul_z(num.get(), num.get(), scale.get_mpz_t(), MPFR_RNDD);
  BigInt floor_scaled;
  mpfr_get_z(floor_scaled.get_mpz_t(), num.get(), MPFR_RNDD);
  Rational q(floor_scaled, scale);
  q.canonicalize();
  return q;
}

bool power_at_least_exp(const BigInt& base, std::uint64_t exp, std::uint64_t b) {
  if (b == 0) return true;  // base^exp ≥ 1 = e^0
  require_base(base);
  if (mpz_sizeinbase(base.get_mpz_t(), 2) * exp > kExactPowerBits) {
    // exp·ln(base) against b; never equal, since e^b is irrational.
    for (mpfr_prec_t prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
      Real lo(prec);
      Real hi(prec);
      ln_bounds(base, lo, hi);
      mpfr_mul_ui(lo.get(), lo.get(), exp, MPFR_RNDD);
      mpfr_mul_ui(hi.get(), hi.get(), exp, MPFR_RNDU);
      if (mpfr_cmp_ui(lo.get(), b) >= 0) return true;
      if (mpfr_cmp_ui(hi.get(), b) < 0) return false;
    }
    throw InternalError("could not separate exp*ln(base) from b");
  }
  const BigInt power = pow(base, exp);
  for (mpfr_prec_t prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
    Real lo(prec);
    Real hi(prec);
    mpfr_set_uj(lo.get(), b, MPFR_RNDN);
    mpfr_set_uj(hi.get(), b, MPFR_RNDN);
    mpfr_exp(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
    if (mpfr_cmp_z(hi.get(), power.get_mpz_t()) <= 0) return true;
    if (mpfr_cmp_z(lo.get(), power.get_mpz_t()) > 0) return false;
  }
  throw InternalError("could not separate base^exp from e^b");
}

}  // namespace snorm::certified
