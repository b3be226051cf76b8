#include "snorm/expsum.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "snorm/certified.hpp"

namespace snorm {
namespace {

// e(num/den) for 0 ≤ num < den.
std::complex<double> unit(const BigInt& num, const BigInt& den) {
  const Rational frac(num, den);
  const double angle = 2.0 * std::numbers::pi * to_double(frac);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

double weyl_sum_sq(const Rational& x, const BigInt& r, std::int64_t t, std::uint64_t j0, std::uint64_t j1) {
  const BigInt& den = x.get_den();
  // residue = t · num · r^j mod den, advanced by one factor of r per step.
  BigInt residue = x.get_num() * BigInt(static_cast<long>(t));
  mpz_fdiv_r(residue.get_mpz_t(), residue.get_mpz_t(), den.get_mpz_t());
  BigInt step;
  mpz_powm_ui(step.get_mpz_t(), r.get_mpz_t(), j0, den.get_mpz_t());
  residue = residue * step;
  mpz_fdiv_r(residue.get_mpz_t(), residue.get_mpz_t(), den.get_mpz_t());
  std::complex<double> sum = 0;
  for (std::uint64_t j = j0; j < j1; ++j) {
    sum += unit(residue, den);
    residue *= r;
    mpz_fdiv_r(residue.get_mpz_t(), residue.get_mpz_t(), den.get_mpz_t());
  }
  return std::norm(sum);
}

double exp_sum(const ExpSumQuery& q, Exec exec) {
  if (q.x < 0 || q.x >= 1) throw std::invalid_argument("x must lie in [0,1)");
  for (auto t : q.ts) {
    if (t == 0) throw std::invalid_argument("T must not contain 0");
  }
  const std::uint64_t pairs = q.ts.size() * q.bases.size();
  const auto parts = map_indices<double>(
      pairs,
      [&](std::uint64_t i) {
        const std::int64_t t = q.ts[i / q.bases.size()];
        const BigInt& r = q.bases[i % q.bases.size()];
        const std::uint64_t j0 = nat_pos(q.a, r) + 1;
        const std::uint64_t j1 = nat_pos(q.a + q.ell, r) + 1;
        return weyl_sum_sq(q.x, r, t, j0, j1);
      },
      exec);
  double total = 0;
  for (double p : parts) total += p;
  return total;
}

LevequeParams leveque_params(const Rational& eps) {
  if (eps <= 0 || eps > 1) throw std::invalid_argument("eps must lie in (0,1]");
  LevequeParams out;
  out.k = certified::ceil_leveque_k(eps).get_ui();
  out.gamma = eps * eps * eps / 2;
  out.gamma.canonicalize();
  return out;
}

double leveque_bound(const DigitBlock& w, const SAdicNumber& x, std::uint64_t t_cap, Exec exec) {
  if (w.empty()) throw std::invalid_argument("empty block");
  if (t_cap == 0) throw std::invalid_argument("t_cap must be positive");
  if (x.base != w.base()) throw std::invalid_argument("block and number must share the base");
  const std::uint64_t len = w.size();
  const SAdicNumber xw{x.base, x.prec + len, x.numerator * pow(x.base, len) + w.value()};
  const Rational v = xw.value();
  // Digit a+1+i of x_w leads s^(a+i) x_w, so the points are j = a … a+ℓ−1.
  const auto terms = map_indices<double>(
      t_cap,
      [&](std::uint64_t i) {
        const auto t = static_cast<std::int64_t>(i + 1);
        const double sq = weyl_sum_sq(v, x.base, t, x.prec, x.prec + len);
        return sq / (static_cast<double>(len) * static_cast<double>(len)) / (static_cast<double>(t) * static_cast<double>(t));
      },
      exec);
  double sum = 0;
  for (double term : terms) sum += term;
  sum += 1.0 / static_cast<double>(t_cap);
  return std::cbrt(6.0 / (std::numbers::pi * std::numbers::pi) * sum);
}

}  // namespace snorm
