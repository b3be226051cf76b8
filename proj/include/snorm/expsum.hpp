#pragma once

#include <cstdint>
#include <vector>

#include "snorm/arith.hpp"
#include "snorm/blocks.hpp"
#include "snorm/kernels.hpp"
#include "snorm/radix.hpp"

namespace snorm {

struct ExpSumQuery {
  Rational x;                   // in [0,1)
  std::vector<BigInt> bases;    // R
  std::vector<std::int64_t> ts; // T, non-zero
  std::uint64_t a = 0;
  std::uint64_t ell = 1;
};

/// |Σ_{j=j0}^{j1-1} e(t r^j x)|², with t r^j x reduced mod 1 exactly first.
double weyl_sum_sq(const Rational& x, const BigInt& r, std::int64_t t, std::uint64_t j0, std::uint64_t j1);

/// Σ_{t∈T} Σ_{r∈R} |Σ_{j=⟨a;r⟩+1}^{⟨a+ℓ;r⟩} e(r^j t x)|². Pairs are summed in
/// (t, r) order whatever the execution mode.
double exp_sum(const ExpSumQuery& q, Exec exec = Exec::serial);

struct LevequeParams {
  std::uint64_t k = 0;  // T = {1, ..., k}
  Rational gamma;
};

/// k = ⌈12/(ε³π²)⌉, γ = ε³/2.
LevequeParams leveque_params(const Rational& eps);

/// Upper bound for D(w, B_s) where w sits at positions a+1 … a+|w| after
/// x (base s, precision a): the LeVeque sum truncated at t_cap plus the
/// tail Σ_{t>t_cap} t^(−2) < 1/t_cap.
double leveque_bound(const DigitBlock& w, const SAdicNumber& x, std::uint64_t t_cap, Exec exec = Exec::serial);

}  // namespace snorm
