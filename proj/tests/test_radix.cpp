#include "doctest.h"
#include "oracles.hpp"
#include "snorm/certified.hpp"
#include "snorm/expsum.hpp"
#include "snorm/radix.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace snorm;

TEST_CASE("nat_pos") {
  CHECK(nat_pos(1, 2) == 2);
  CHECK(nat_pos(2, 2) == 3);
  CHECK(nat_pos(1, 3) == 1);
  CHECK(nat_pos(0, 7) == 0);
  for (std::uint64_t b = 1; b <= 300; b += 7) {
    for (std::uint64_t r = 2; r <= 64; ++r) {
      const auto p = nat_pos(b, BigInt(r));
      CHECK(certified::power_at_least_exp(BigInt(r), p, b));
      CHECK_FALSE(certified::power_at_least_exp(BigInt(r), p - 1, b));
    }
  }
}

TEST_CASE("certified ceilings") {
  CHECK(certified::ceil_ln(BigInt(2)) == 1);
  CHECK(certified::ceil_ln(BigInt(54)) == 4);
  CHECK(certified::ceil_ln(BigInt(55)) == 5);
  CHECK(certified::ceil_mul_ln(Rational(181), BigInt(2)) == 126);
  CHECK(certified::ceil_leveque_k(Rational(1)) == 2);
  CHECK(certified::ceil_leveque_k(Rational(1, 2)) == 10);
  const Rational eta = certified::log_ratio_lower(BigInt(65536), 15);
  CHECK(eta < 1);
  CHECK(eta > Rational(99997, 100000));
}

TEST_CASE("extract_digits") {
  const SAdicNumber quarter{2, 2, 1};
  CHECK(extract_digits(quarter, 3, 0, 4).str() == "0202");
  CHECK(extract_digits(SAdicNumber{5, 3, 0}, 7, 2, 6).str() == "0000");
  CHECK(extract_digits(SAdicNumber{2, 1, 1}, 2, 0, 3).str() == "100");
  CHECK(extract_digits(Rational(1, 3), 2, 0, 6).str() == "010101");
  CHECK(extract_digits(Rational(1, 3), 2, 3, 6).str() == "101");
  CHECK(extract_digits(Rational(5, 7), 100, 0, 3).str() == "71.42.85");
}

TEST_CASE("extract_digits agrees with long division") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const BigInt den = BigInt(static_cast<unsigned long>(2 + rng() % 100000)) * BigInt(static_cast<unsigned long>(1 + rng() % 1000));
    const BigInt num = BigInt(static_cast<unsigned long>(rng())) % den;
    const std::uint32_t r = 2 + static_cast<std::uint32_t>(rng() % 80);
    const std::uint64_t len = 1 + rng() % 60;
    const Rational x(num, den);
    const auto expect = oracle::long_division(num, den, r, len);
    const auto got = extract_digits(x, r, 0, len);
    CHECK(std::vector<Digit>(got.digits().begin(), got.digits().end()) == expect);
    // truncation bound
    Rational partial = 0;
    for (std::uint64_t j = 0; j < len; ++j) partial += Rational(BigInt(got[j]), pow(BigInt(r), j + 1));
    CHECK(partial <= x);
    CHECK(x < partial + Rational(BigInt(1), pow(BigInt(r), len)));
    const std::uint64_t i0 = rng() % len;
    const auto part = extract_digits(x, r, i0, len);
    CHECK(std::vector<Digit>(part.digits().begin(), part.digits().end()) ==
          std::vector<Digit>(expect.begin() + static_cast<std::ptrdiff_t>(i0), expect.end()));
  }
}

TEST_CASE("sadic_subinterval") {
  auto iv = sadic_subinterval(Rational(1, 10), Rational(2, 5), BigInt(2));
  CHECK(iv.lo() == Rational(1, 8));
  CHECK(iv.hi() == Rational(1, 4));
  iv = sadic_subinterval(Rational(0), Rational(1), BigInt(2));
  CHECK(iv.length() == Rational(1, 2));
}

TEST_CASE("leftmost_tadic_subinterval") {
  const AdicInterval iv{2, nat_pos(1, 2), 0};
  CHECK(iv.hi() == Rational(1, 4));
  const auto pick = leftmost_tadic_subinterval(iv, 1, BigInt(3));
  CHECK(pick.a == 5);
  CHECK(pick.y.prec == 5);
  CHECK(pick.y.numerator == 0);
  CHECK_THROWS_AS(leftmost_tadic_subinterval(AdicInterval{2, 3, 0}, 1, BigInt(3)), std::invalid_argument);
}

TEST_CASE("exp_sum") {
  ExpSumQuery q;
  q.x = Rational(1, 2);
  q.bases = {BigInt(3)};
  q.ts = {1};
  q.a = 1;
  q.ell = 2;
  // <1;3> = 1, <3;3> = 3: j = 2, 3
  CHECK(exp_sum(q) == doctest::Approx(4.0).epsilon(1e-12));
  q.ts.clear();
  CHECK(exp_sum(q) == 0.0);
  q.x = 0;
  q.ts = {1, -2, 5};
  q.bases = {BigInt(2), BigInt(3), BigInt(10)};
  q.a = 4;
  q.ell = 17;
  double expect = 0;
  for (int t = 0; t < 3; ++t) {
    for (std::uint64_t r : {2u, 3u, 10u}) {
      const double k = static_cast<double>(nat_pos(21, BigInt(r)) - nat_pos(4, BigInt(r)));
      expect += k * k;
    }
  }
  CHECK(exp_sum(q) == doctest::Approx(expect).epsilon(1e-12));
  q.x = Rational(123457, 1000003);
  CHECK(exp_sum(q, Exec::parallel) == exp_sum(q, Exec::serial));
}

TEST_CASE("leveque_params") {
  auto p = leveque_params(Rational(1));
  CHECK(p.k == 2);
  CHECK(p.gamma == Rational(1, 2));
  p = leveque_params(Rational(1, 2));
  CHECK(p.k == 10);
  CHECK(p.gamma == Rational(1, 16));
  std::uint64_t prev = ~std::uint64_t{0};
  for (int i = 1; i <= 20; ++i) {
    const auto k = leveque_params(Rational(i, 20)).k;
    CHECK(k <= prev);
    prev = k;
  }
  CHECK_THROWS_AS(leveque_params(Rational(0)), std::invalid_argument);
}

TEST_CASE("leveque_bound against a direct summation") {
  // w = "01" x 16, x = 0, a = 0, t_cap = 50
  std::vector<Digit> d;
  for (int i = 0; i < 16; ++i) {
    d.push_back(0);
    d.push_back(1);
  }
  const DigitBlock w(2, d);
  const double got = leveque_bound(w, SAdicNumber{2, 0, 0}, 50);
  // x_w = 0.0101..01 (binary); {2^j x_w} computed in long double from exact residues.
  const BigInt num = w.value();
  const BigInt den = pow(BigInt(2), 32);
  long double sum = 0;
  for (int t = 1; t <= 50; ++t) {
    std::complex<long double> acc = 0;
    for (int j = 0; j < 32; ++j) {
      const BigInt scaled = (num * t * pow(BigInt(2), static_cast<std::uint64_t>(j))) % den;
      const long double frac = static_cast<long double>(scaled.get_d()) / static_cast<long double>(den.get_d());
      acc += std::polar(1.0L, 2.0L * std::numbers::pi_v<long double> * frac);
    }
    sum += std::norm(acc) / (32.0L * 32.0L) / (static_cast<long double>(t) * t);
  }
  sum += 1.0L / 50;
  const double expect = static_cast<double>(std::cbrt(6.0L / (std::numbers::pi_v<long double> * std::numbers::pi_v<long double>) * sum));
  CHECK(got == doctest::Approx(expect).epsilon(1e-9));
  CHECK(got >= to_double(discrepancy(w)));
  CHECK(got <= std::cbrt(6.0 / (std::numbers::pi * std::numbers::pi) * 51.0));
  CHECK(leveque_bound(w, SAdicNumber{2, 0, 0}, 50, Exec::parallel) == got);
}
