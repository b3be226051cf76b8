#include "snorm/analyzer.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "snorm/certified.hpp"

namespace snorm {
namespace {

Rational frac(std::uint64_t p, std::uint64_t q) {
  Rational f(BigInt(static_cast<unsigned long>(p)), BigInt(static_cast<unsigned long>(q)));
  f.canonicalize();
  return f;
}

// ⌈ln N⌉ as the least g with N ≤ e^g (N is never a power of e).
std::uint64_t ceil_ln_by_powers(const BigInt& n) {
  std::uint64_t lo = 0, hi = 1;
  while (certified::power_at_least_exp(n, 1, hi)) hi *= 2;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (certified::power_at_least_exp(n, 1, mid)) lo = mid + 1; else hi = mid;
  }
  return lo;
}

constexpr std::size_t kSchoolbookDigits = 256;

// The len base-r digits of v < r^len into out, most significant first.
void split_digits(const BigInt& v, const BigInt& r, Digit* out, std::size_t len) {
  if (len <= kSchoolbookDigits) {
    BigInt rest = v;
    for (std::size_t i = len; i-- > 0;)
      out[i] = static_cast<Digit>(mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), r.get_ui()));
    return;
  }
  const std::size_t low = len / 2;
  BigInt hi, lo;
  mpz_fdiv_qr(hi.get_mpz_t(), lo.get_mpz_t(), v.get_mpz_t(), pow(r, low).get_mpz_t());
  split_digits(hi, r, out, len - low);
  split_digits(lo, r, out + (len - low), low);
}

Rational digit_discrepancy(const std::vector<Digit>& digits, std::uint64_t r) {
  std::vector<std::uint64_t> items(digits.begin(), digits.end());
  return discrepancy(items, r);
}

struct Replay {
  std::ostringstream why;
  bool fail(const std::string& msg) {
    why << msg;
    return false;
  }
};

}  // namespace

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::holds: return "holds";
    case Outcome::fails: return "fails";
    case Outcome::premise_failure: return "premise-failure";
  }
  return "?";
}

std::vector<Digit> long_division_digits(const BigInt& num, const BigInt& den, std::uint64_t r, std::uint64_t i0,
                                        std::uint64_t i1) {
  if (i1 < i0) throw std::invalid_argument("empty digit window");
  const BigInt radix(static_cast<unsigned long>(r));
  BigInt rem;
  mpz_powm_ui(rem.get_mpz_t(), radix.get_mpz_t(), i0, den.get_mpz_t());
  rem *= num;
  mpz_fdiv_r(rem.get_mpz_t(), rem.get_mpz_t(), den.get_mpz_t());
  std::vector<Digit> out(i1 - i0);
  if (out.size() <= kSchoolbookDigits) {
    BigInt q;
    for (auto& d : out) {
      rem *= radix;
      mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), rem.get_mpz_t(), den.get_mpz_t());
      d = static_cast<Digit>(q.get_ui());
    }
    return out;
  }
  // Long windows: one division by den, then split the quotient in radix r^h.
  BigInt block = rem * pow(radix, out.size());
  mpz_fdiv_q(block.get_mpz_t(), block.get_mpz_t(), den.get_mpz_t());
  split_digits(block, radix, out.data(), out.size());
  return out;
}

std::uint64_t pos_by_powers(std::uint64_t b, const BigInt& r) {
  if (b == 0) return 0;
  std::uint64_t lo = 1, hi = 1;
  while (!certified::power_at_least_exp(r, hi, b)) hi *= 2;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (certified::power_at_least_exp(r, mid, b)) hi = mid; else lo = mid + 1;
  }
  return lo;
}

std::vector<ReportRow> digit_report(const SAdicNumber& x, std::uint64_t b, const std::vector<std::uint32_t>& bases,
                                    const std::vector<std::uint64_t>& checkpoints, Exec exec) {
  std::vector<std::uint64_t> cps = checkpoints;
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  std::vector<std::uint32_t> bs = bases;
  std::sort(bs.begin(), bs.end());
  bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  for (auto r : bs) {
    if (r < 2) throw std::invalid_argument("report bases must be at least 2");
    const std::uint64_t avail = nat_pos(b, BigInt(r));
    if (!cps.empty() && cps.back() > avail)
      throw std::invalid_argument("checkpoint " + std::to_string(cps.back()) + " exceeds the " + std::to_string(avail) +
                                  " digits available in base " + std::to_string(r));
  }
  if (!cps.empty() && cps.front() == 0) throw std::invalid_argument("checkpoints must be positive");
  const Rational value = x.value();
  const auto per_base = map_indices<std::vector<ReportRow>>(
      bs.size(),
      [&](std::uint64_t i) {
        const std::uint32_t r = bs[i];
        std::vector<ReportRow> rows;
        if (cps.empty()) return rows;
        const DigitBlock digits = extract_digits(value, r, 0, cps.back());
        std::vector<std::uint64_t> counts(r, 0);
        std::size_t next = 0;
        for (std::uint64_t pos = 0; pos < digits.size(); ++pos) {
          ++counts[digits[pos]];
          if (pos + 1 == cps[next]) {
            ReportRow row;
            row.base = r;
            row.checkpoint = pos + 1;
            row.counts = counts;
            BigInt worst = 0;
            for (auto c : counts) {
              BigInt dev = BigInt(static_cast<unsigned long>(c)) * r - BigInt(static_cast<unsigned long>(pos + 1));
              if (dev < 0) dev = -dev;
              worst = std::max(worst, dev);
            }
            row.discrepancy = Rational(worst, BigInt(static_cast<unsigned long>(pos + 1)) * r);
            row.discrepancy.canonicalize();
            rows.push_back(std::move(row));
            ++next;
          }
        }
        return rows;
      },
      exec);
  std::vector<ReportRow> out;
  for (const auto& rows : per_base) out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

VerifyResult verify_stage_log(const std::vector<StageRecord>& log, const NormalityProfile& profile) {
  VerifyResult res;
  if (log.empty()) return {false, 0, "empty log"};
  Schedule sched(profile);
  std::uint64_t t = 0, j = 0, b = 0;
  SAdicNumber x{sched.phase(0).s_star, 0, 0};
  std::map<std::uint64_t, unsigned> attempts;

  for (std::size_t i = 0; i < log.size(); ++i) {
    const StageRecord& rec = log[i];
    Replay rp;
    auto check = [&]() -> bool {
      if (b >= profile.until_b) return rp.fail("stage after the run should have stopped");
      if (rec.t != t) return rp.fail("stage counter " + std::to_string(rec.t) + ", expected " + std::to_string(t));
      if (rec.j_prev != j) return rp.fail("phase mismatch");
      const PhaseParams& p0 = sched.phase(j);
      const PhaseParams& p1 = sched.phase(j + 1);
      if (rec.ell_next != sched.ell(j + 1, attempts[j + 1])) return rp.fail("l(j+1) used by condition (1) is wrong");

      // Condition (1).
      const std::uint64_t gap = ceil_ln_by_powers(p0.s_star * p1.s_star * p1.s_star * p1.s_star);
      std::set<std::uint64_t> growth;
      for (std::uint64_t k = 0; k <= j + 1 && !sched.bases().empty(); ++k) growth.insert(sched.r(k));
      for (auto m : p0.m) growth.erase(checked_pow(p0.s, m));
      bool cond1 = true;
      for (auto r : growth) {
        const std::uint64_t now = pos_by_powers(b, BigInt(r));
        const std::uint64_t later = pos_by_powers(b + gap + rec.ell_next, BigInt(r));
        cond1 = cond1 && BigInt(later - now) * BigInt(j + 1) < BigInt(now);
      }
      if (cond1 != rec.cond1) return rp.fail("condition (1) recorded as " + std::to_string(rec.cond1));

      // Condition (2) on the first ⟨b;s⟩ base-s digits of x_t.
      const AlphabetU& a0 = *p0.alphabet;
      const auto prefix = long_division_digits(x.numerator, pow(x.base, x.prec), a0.s, 0, pos_by_powers(b, BigInt(a0.s)));
      const std::uint64_t chunks = prefix.size() / a0.n;
      bool cond2 = false;
      std::optional<Rational> f2;
      if (chunks > 0) {
        f2 = frac(count_chunk(DigitBlock(a0.s, prefix), a0.bias.d), chunks);
        cond2 = *f2 < Rational(BigInt(1), pow(BigInt(a0.s), a0.n)) - *a0.bias.eps / 2;
      }
      if (cond2 != rec.cond2) return rp.fail("condition (2) recorded as " + std::to_string(rec.cond2));
      if (f2 != rec.cond2_freq) return rp.fail("condition (2) frequency differs");

      std::uint64_t a = b;
      SAdicNumber y = x;
      std::uint64_t j_next = j;
      if (cond1 && cond2) {
        j_next = j + 1;
        a = b + gap;
        const std::uint64_t py = pos_by_powers(a, p1.s_star);
        const BigInt scale = pow(p1.s_star, py);
        BigInt k;
        BigInt num = x.numerator * scale;
        mpz_cdiv_q(k.get_mpz_t(), num.get_mpz_t(), pow(x.base, x.prec).get_mpz_t());
        if (Rational(k + 1, scale) > Rational(x.numerator + 1, pow(x.base, x.prec)))
          return rp.fail("no t-adic interval of the required length");
        y = {p1.s_star, py, k};
      }
      if (rec.j != j_next) return rp.fail("phase transition recorded wrongly");
      if (rec.a != a) return rp.fail("position a recorded wrongly");

      const PhaseParams& pj = sched.phase(j_next);
      const AlphabetU& alpha = *pj.alphabet;
      if (rec.attempt < attempts[j_next]) return rp.fail("l attempt went backwards");
      if (rec.ell != sched.ell(j_next, rec.attempt)) return rp.fail("l(j) does not match its attempt");
      if (rec.b != a + rec.ell) return rp.fail("b != a + l");
      if (rec.s_star != pj.s_star) return rp.fail("s* mismatch");

      const std::uint64_t p_lo = pos_by_powers(a, pj.s_star);
      const std::uint64_t letters = pos_by_powers(rec.b, pj.s_star) - p_lo;
      const std::uint64_t len = alpha.block_length();
      if (rec.block.base() != alpha.s || rec.block.size() != letters * len) return rp.fail("block has the wrong length");
      for (std::uint64_t k = 0; k < letters; ++k) {
        const auto first = rec.block.digits().begin() + static_cast<std::ptrdiff_t>(k * len);
        const DigitBlock letter(alpha.s, std::vector<Digit>(first, first + static_cast<std::ptrdiff_t>(len)));
        if (!alpha.contains(letter)) return rp.fail("letter " + std::to_string(k) + " is an excluded block");
      }
      const std::uint64_t stream = stream_seed(profile.seed, t, rec.attempt);
      if (rec.candidates == 0 || rec.candidates > profile.budget ||
          rec.block != candidate_block(alpha, letters, stream, rec.candidates - 1))
        return rp.fail("block is not the recorded candidate of the seeded stream");
      BigInt w_value = 0;
      for (auto d : rec.block.digits()) w_value = w_value * alpha.s + d;
      const BigInt num = y.numerator * pow(pj.s_star, letters) + w_value;
      if (rec.prec != p_lo + letters || rec.numerator != num) return rp.fail("x_{t+1} is not y followed by the block");

      const Rational bound = frac(1, j_next + 1);
      std::vector<std::pair<std::uint64_t, Rational>> ii;
      for (auto m : pj.m) {
        const Rational dm = chunk_discrepancy(rec.block, m);
        if (!(dm < bound)) return rp.fail("condition (ii) fails for m=" + std::to_string(m));
        ii.emplace_back(m, dm);
      }
      if (ii != rec.ii) return rp.fail("condition (ii) values differ");
      const Rational f3 = frac(count_chunk(rec.block, alpha.bias.d), rec.block.size() / alpha.n);
      if (!(f3 < Rational(BigInt(1), pow(BigInt(alpha.s), alpha.n)) - *alpha.bias.eps))
        return rp.fail("condition (iii) fails");
      if (f3 != rec.iii) return rp.fail("condition (iii) value differs");
      std::vector<std::pair<std::uint64_t, Rational>> iv;
      const BigInt den = pow(pj.s_star, rec.prec);
      for (auto r : pj.check_bases) {
        const auto u = long_division_digits(num, den, r, pos_by_powers(a, BigInt(r)), pos_by_powers(rec.b, BigInt(r)));
        const Rational dr = digit_discrepancy(u, r);
        if (!(dr < bound)) return rp.fail("condition (iv) fails for r=" + std::to_string(r));
        iv.emplace_back(r, dr);
      }
      if (iv != rec.iv) return rp.fail("condition (iv) values differ");
      if (rec.eta != certified::log_ratio_lower(pj.s_star, 15)) return rp.fail("eta differs");

      attempts[j_next] = rec.attempt;
      t += 1;
      j = j_next;
      b = rec.b;
      x = {pj.s_star, rec.prec, num};
      return true;
    };
    if (!check()) return {false, i, rp.why.str()};
  }
  if (b < profile.until_b) return {false, log.size(), "log ends before b reaches until_b"};
  return res;
}

Outcome check_append_bound(const DigitBlock& w, const DigitBlock& u, const Rational& eps) {
  if (w.empty() || u.base() != w.base()) return Outcome::premise_failure;
  if (!(discrepancy(w) < eps)) return Outcome::premise_failure;
  if (!(Rational(BigInt(static_cast<unsigned long>(u.size()))) < eps * Rational(BigInt(static_cast<unsigned long>(w.size())))))
    return Outcome::premise_failure;
  return discrepancy(w.concat(u)) < 2 * eps ? Outcome::holds : Outcome::fails;
}

Outcome check_limit_bound(const DigitBlock& w, const std::vector<std::uint64_t>& cuts, std::uint64_t t0,
                          const Rational& eps) {
  if (cuts.size() < t0 + 3) return Outcome::premise_failure;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (cuts[i] <= cuts[i - 1]) return Outcome::premise_failure;
  }
  if (cuts.back() > w.size() || cuts.front() == 0) return Outcome::premise_failure;
  for (std::size_t t = t0 + 1; t + 1 < cuts.size(); ++t) {
    if (Rational(BigInt(static_cast<unsigned long>(cuts[t + 1] - cuts[t]))) > eps * Rational(BigInt(static_cast<unsigned long>(cuts[t]))))
      return Outcome::premise_failure;
    const auto first = w.digits().begin();
    const DigitBlock seg(w.base(), std::vector<Digit>(first + static_cast<std::ptrdiff_t>(cuts[t]),
                                                      first + static_cast<std::ptrdiff_t>(cuts[t + 1])));
    if (!(discrepancy(seg) < eps)) return Outcome::premise_failure;
  }
  const std::uint64_t head = cuts[t0 + 1];
  const std::uint64_t r = w.base();
  std::vector<std::uint64_t> counts(r, 0);
  for (std::uint64_t n = 1; n <= cuts.back(); ++n) {
    ++counts[w[n - 1]];
    if (n <= head) continue;
    // max_d |c_d r − N| ≤ 2ε N r + head·r
    BigInt worst = 0;
    for (auto c : counts) {
      BigInt dev = BigInt(static_cast<unsigned long>(c)) * r - BigInt(static_cast<unsigned long>(n));
      if (dev < 0) dev = -dev;
      worst = std::max(worst, dev);
    }
    const Rational limit = 2 * eps * Rational(BigInt(static_cast<unsigned long>(n * r))) + Rational(BigInt(static_cast<unsigned long>(head * r)));
    if (Rational(worst) > limit) return Outcome::fails;
  }
  return Outcome::holds;
}

Outcome check_liminf_deficit(const DigitBlock& w, const std::vector<std::uint64_t>& cuts, std::uint64_t t0, Digit d,
                             const Rational& eps) {
  if (cuts.size() < t0 + 3 || d >= w.base()) return Outcome::premise_failure;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (cuts[i] <= cuts[i - 1]) return Outcome::premise_failure;
  }
  if (cuts.back() > w.size() || cuts.front() == 0) return Outcome::premise_failure;
  const Rational inv_r(BigInt(1), BigInt(w.base()));
  for (std::size_t t = t0 + 1; t + 1 < cuts.size(); ++t) {
    std::uint64_t occ = 0;
    for (std::uint64_t k = cuts[t]; k < cuts[t + 1]; ++k) occ += w[k] == d;
    if (!(frac(occ, cuts[t + 1] - cuts[t]) < inv_r - eps)) return Outcome::premise_failure;
  }
  const Rational head(BigInt(static_cast<unsigned long>(cuts[t0 + 1])));
  if (head * (1 - inv_r + eps) > eps / 2 * Rational(BigInt(static_cast<unsigned long>(cuts.back()))))
    return Outcome::premise_failure;
  std::uint64_t occ = 0;
  std::size_t next = t0 + 2;
  for (std::uint64_t k = 0; k < cuts.back(); ++k) {
    occ += w[k] == d;
    if (next < cuts.size() && k + 1 == cuts[next]) {
      if (frac(occ, k + 1) < inv_r - eps / 2) return Outcome::holds;
      ++next;
    }
  }
  return Outcome::fails;
}

Outcome check_transfer(const SAdicNumber& q, const Rational& x, std::uint32_t r, std::uint64_t p, std::uint64_t a,
                       std::uint64_t b, const Rational& eps) {
  if (!(a < b) || p == 0 || r < 2) return Outcome::premise_failure;
  if (q.prec != nat_pos(b, q.base)) return Outcome::premise_failure;
  const Rational qv = q.value();
  if (x < qv || !(x < qv + Rational(BigInt(1), pow(q.base, q.prec))) || x >= 1) return Outcome::premise_failure;
  const BigInt rp = pow(BigInt(r), p);
  if (!rp.fits_uint_p()) return Outcome::premise_failure;
  const auto rp32 = static_cast<std::uint32_t>(rp.get_ui());
  const std::uint64_t ua = nat_pos(a, BigInt(r)), ub = nat_pos(b, BigInt(r));
  const std::uint64_t pa = nat_pos(a, rp), pb = nat_pos(b, rp);
  if (ua >= ub || pa >= pb) return Outcome::premise_failure;
  const DigitBlock u = extract_digits(qv, r, ua, ub);
  const DigitBlock ut = extract_digits(qv, rp32, pa, pb);
  if (!(discrepancy(u) < eps) || !(discrepancy(ut) < eps)) return Outcome::premise_failure;
  if (!(Rational(BigInt(2), rp) < eps)) return Outcome::premise_failure;
  if (!(frac(3 * p, u.size()) < eps)) return Outcome::premise_failure;
  const DigitBlock v = extract_digits(x, r, ua, ub);
  return discrepancy(v) < 5 * eps ? Outcome::holds : Outcome::fails;
}

}  // namespace snorm
