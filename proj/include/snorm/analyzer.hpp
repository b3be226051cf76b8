#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snorm/engine.hpp"
#include "snorm/kernels.hpp"
#include "snorm/profile.hpp"
#include "snorm/radix.hpp"

namespace snorm {

struct ReportRow {
  std::uint32_t base = 2;
  std::uint64_t checkpoint = 0;
  std::vector<std::uint64_t> counts;  // per digit
  Rational discrepancy;
};

/// Rows ordered by base, then checkpoint. x carries b nats of precision, so
/// base r offers ⟨b;r⟩ digits; larger checkpoints are refused.
std::vector<ReportRow> digit_report(const SAdicNumber& x, std::uint64_t b, const std::vector<std::uint32_t>& bases,
                                    const std::vector<std::uint64_t>& checkpoints, Exec exec = Exec::parallel);

struct VerifyResult {
  bool ok = true;
  std::uint64_t stage = 0;  // index of the first failing record
  std::string message;
};

/// Replays the log from scratch and rechecks every condition exactly. Digits
/// come from long division and positions from exact powers, not from the
/// routines the engine used.
VerifyResult verify_stage_log(const std::vector<StageRecord>& log, const NormalityProfile& profile);

enum class Outcome { holds, fails, premise_failure };
const char* to_string(Outcome o);

/// D(w) < ε and |u| < ε|w| imply D(wu) < 2ε.
Outcome check_append_bound(const DigitBlock& w, const DigitBlock& u, const Rational& eps);

/// Segments [cuts[t], cuts[t+1]) for t > t0 must satisfy the growth and
/// discrepancy premises; then every prefix of length N in (cuts[t0+1], cuts.back()]
/// has D ≤ 2ε + cuts[t0+1]/N.
Outcome check_limit_bound(const DigitBlock& w, const std::vector<std::uint64_t>& cuts, std::uint64_t t0,
                          const Rational& eps);

/// Segments past t0 have d-frequency < 1/r − ε and the horizon satisfies
/// cuts[t0+1](1 − 1/r + ε) ≤ (ε/2) cuts.back(); then some prefix ending at a
/// cut has d-frequency < 1/r − ε/2.
Outcome check_liminf_deficit(const DigitBlock& w, const std::vector<std::uint64_t>& cuts, std::uint64_t t0, Digit d,
                             const Rational& eps);

/// q has base s and precision ⟨b;s⟩, x ∈ [q, q + s^(−⟨b;s⟩)). Windows are
/// (⟨a;·⟩, ⟨b;·⟩]. Premises D(u,B_r), D(ũ,B_{r^p}), 2/r^p, 3p/|u| < ε give D(v,B_r) < 5ε.
Outcome check_transfer(const SAdicNumber& q, const Rational& x, std::uint32_t r, std::uint64_t p, std::uint64_t a,
                       std::uint64_t b, const Rational& eps);

/// Digits i0+1 … i1 of num/den in base r by long division: digit by digit for
/// short windows, in radix r^h with recursive halving for long ones.
std::vector<Digit> long_division_digits(const BigInt& num, const BigInt& den, std::uint64_t r, std::uint64_t i0,
                                        std::uint64_t i1);

/// ⟨b;r⟩ found as the least p with r^p ≥ e^b, by exact powers.
std::uint64_t pos_by_powers(std::uint64_t b, const BigInt& r);

}  // namespace snorm
