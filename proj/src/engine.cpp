#include "snorm/engine.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "snorm/certified.hpp"

namespace snorm {
namespace {

constexpr std::uint64_t kMaxBase = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint64_t kBatch = 32;
constexpr unsigned kEtaDigits = 15;

std::uint64_t power_base(std::uint64_t r, std::uint64_t e) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(v, r, &v) || v > kMaxBase)
      throw std::invalid_argument("tracked base " + std::to_string(r) + "^" + std::to_string(e) + " exceeds 2^32-1");
  }
  return v;
}

Rational unit_fraction(std::uint64_t k) { return Rational(BigInt(1), BigInt(static_cast<unsigned long>(k))); }

}  // namespace

Schedule::Schedule(NormalityProfile profile) : profile_(std::move(profile)) {
  std::set<std::uint64_t> bases;
  for (const auto& e : profile_.entries) {
    if (e.all) {
      for (std::uint64_t m = 1; m <= e.m_max; ++m) bases.insert(power_base(e.s, m));
      continue;
    }
    for (auto m : e.m) bases.insert(power_base(e.s, m));
    for (std::uint64_t n = 1; n <= profile_.n_max; ++n) {
      if (!e.m.count(n)) pairs_.emplace_back(e.s, n);
    }
  }
  bases_.assign(bases.begin(), bases.end());
  if (pairs_.empty())
    throw std::invalid_argument("no base has a finite M with a free n <= n_max; nothing to deny normality to");
}

std::uint64_t Schedule::r(std::uint64_t k) const {
  if (bases_.empty()) throw std::logic_error("no tracked bases");
  return bases_[std::min<std::uint64_t>(k, bases_.size() - 1)];
}

std::uint64_t Schedule::least_p(std::uint64_t j) const {
  const std::uint64_t target = 2 * (j + 1);
  const std::uint64_t count = std::min<std::uint64_t>(j + 1, bases_.size());
  for (std::uint64_t p = 1;; ++p) {
    bool ok = true;
    for (std::uint64_t k = 0; k < count && ok; ++k) ok = pow(BigInt(bases_[k]), p) >= target;
    if (ok) return p;
  }
}

const PhaseParams& Schedule::phase(std::uint64_t j) {
  if (auto it = phases_.find(j); it != phases_.end()) return it->second;
  PhaseParams ph;
  ph.j = j;
  std::tie(ph.s, ph.n) = pairs_[j % pairs_.size()];
  for (const auto& e : profile_.entries) {
    if (e.s == ph.s) ph.m = e.m;
  }
  const std::uint64_t count = std::min<std::uint64_t>(j + 1, bases_.size());
  ph.r_list.assign(bases_.begin(), bases_.begin() + static_cast<std::ptrdiff_t>(count));
  ph.p = least_p(j);

  auto& slot = alphabets_[{ph.s, ph.n}];
  if (!slot) slot = std::make_shared<const AlphabetU>(balanced_alphabet(ph.s, ph.m, ph.n, profile_.c));
  ph.alphabet = slot;
  if (!ph.alphabet->materialized() || !ph.alphabet->bias.eps)
    throw std::invalid_argument("alphabet for s=" + std::to_string(ph.s) + ", n=" + std::to_string(ph.n) +
                                " has letters of length " + ph.alphabet->ell_u.get_str() +
                                ", too long for the construction");
  ph.s_star = pow(BigInt(ph.s), ph.alphabet->ell_u.get_ui());

  std::set<std::uint64_t> check(ph.r_list.begin(), ph.r_list.end());
  for (auto r : ph.r_list) check.insert(power_base(r, ph.p));
  for (auto m : ph.m) check.erase(power_base(ph.s, m));
  ph.check_bases.assign(check.begin(), check.end());

  // ℓ(j): every window of length ℓ must hold more than max(bound1, 3p_k(j+2))
  // digits in each base r_k, and ⟨a+ℓ;r⟩ − ⟨a;r⟩ ≥ ℓ/ln r − 1.
  const BigInt& prev_star = j == 0 ? ph.s_star : phase(j - 1).s_star;
  const std::uint64_t bound1 = 2 * position_gap(prev_star, ph.s_star) * (j + 2);
  BigInt best = 2 * BigInt(certified::ceil_ln(ph.s_star));
  if (!bases_.empty()) {
    for (std::uint64_t k = 0; k <= j; ++k) {
      const std::uint64_t pk = k == j ? ph.p : phase(k).p;
      const std::uint64_t bound = std::max(bound1, 3 * pk * (j + 2));
      best = std::max(best, certified::ceil_mul_ln(Rational(BigInt(static_cast<unsigned long>(bound + 1))), BigInt(r(k))));
    }
  }
  if (!best.fits_ulong_p()) throw std::invalid_argument("l(" + std::to_string(j) + ") does not fit in 64 bits");
  ph.base_ell = best.get_ui();
  return phases_.emplace(j, std::move(ph)).first->second;
}

std::uint64_t Schedule::ell(std::uint64_t j, unsigned attempt) {
  const std::uint64_t base = phase(j).base_ell;
  if (attempt >= 64 || base > (std::numeric_limits<std::uint64_t>::max() >> attempt))
    throw std::overflow_error("l doubling overflows");
  return base << attempt;
}

std::vector<std::uint64_t> Schedule::growth_bases(std::uint64_t j) {
  std::set<std::uint64_t> out;
  if (!bases_.empty()) {
    for (std::uint64_t k = 0; k <= j + 1; ++k) out.insert(r(k));
  }
  const PhaseParams& ph = phase(j);
  for (auto m : ph.m) out.erase(power_base(ph.s, m));
  return {out.begin(), out.end()};
}

std::optional<Rational> chunk_frequency(const DigitBlock& w, const DigitBlock& d) {
  const std::uint64_t chunks = w.size() / d.size();
  if (chunks == 0) return std::nullopt;
  Rational f(BigInt(static_cast<unsigned long>(count_chunk(w, d))), BigInt(static_cast<unsigned long>(chunks)));
  f.canonicalize();
  return f;
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t t, unsigned attempt) {
  return mix64(mix64(mix64(seed) ^ t) ^ attempt);
}

DigitBlock candidate_block(const AlphabetU& alphabet, std::uint64_t letters, std::uint64_t stream,
                           std::uint64_t index) {
  const std::uint64_t len = alphabet.block_length();
  std::mt19937_64 rng(mix64(stream ^ mix64(index)));
  std::vector<Digit> digits;
  digits.reserve(letters * len);
  std::vector<Digit> letter(len);
  for (std::uint64_t k = 0; k < letters; ++k) {
    // Rejection against the excluded blocks keeps letters uniform on U.
    do {
      for (auto& d : letter) d = static_cast<Digit>(uniform_below(rng, alphabet.s));
    } while (!alphabet.contains(DigitBlock(alphabet.s, letter)));
    digits.insert(digits.end(), letter.begin(), letter.end());
  }
  return DigitBlock(alphabet.s, std::move(digits));
}

std::optional<BlockChoice> find_block(Schedule& schedule, const FindRequest& req, Exec exec) {
  const PhaseParams& ph = schedule.phase(req.j);
  const AlphabetU& alpha = *ph.alphabet;
  const BigInt& star = ph.s_star;
  const std::uint64_t p0 = nat_pos(req.a, star);
  if (req.y.base != star || req.y.prec != p0) throw std::invalid_argument("y must have precision <a; s*>");
  const std::uint64_t letters = nat_pos(req.a + req.ell, star) - p0;
  if (letters == 0) throw InternalError("stage window holds no letter");

  const Rational bound = unit_fraction(req.j + 1);
  const Rational iii_bound = Rational(BigInt(1), pow(BigInt(ph.s), ph.n)) - *alpha.bias.eps;
  struct Window {
    std::uint64_t r, lo, hi;
  };
  std::vector<Window> windows;
  for (auto r : ph.check_bases) windows.push_back({r, nat_pos(req.a, BigInt(r)), nat_pos(req.a + req.ell, BigInt(r))});
  const BigInt shifted = req.y.numerator * pow(star, letters);
  const BigInt denom = pow(star, p0 + letters);

  // Cheapest and most selective test first.
  auto evaluate = [&](std::uint64_t index, BlockChoice* out) {
    DigitBlock w = candidate_block(alpha, letters, req.stream, index);
    const Rational freq = *chunk_frequency(w, alpha.bias.d);
    if (!(freq < iii_bound)) return false;
    std::vector<std::pair<std::uint64_t, Rational>> ii;
    for (auto m : ph.m) {
      Rational dm = chunk_discrepancy(w, m);
      if (!(dm < bound)) return false;
      ii.emplace_back(m, std::move(dm));
    }
    const BigInt num = shifted + w.value();
    Rational x(num, denom);
    x.canonicalize();
    std::vector<std::pair<std::uint64_t, Rational>> iv;
    for (const auto& win : windows) {
      Rational dr = discrepancy(extract_digits(x, static_cast<std::uint32_t>(win.r), win.lo, win.hi));
      if (!(dr < bound)) return false;
      iv.emplace_back(win.r, std::move(dr));
    }
    if (out) {
      out->x_next = {star, p0 + letters, num};
      out->block = std::move(w);
      out->index = index;
      out->ii = std::move(ii);
      out->iii = freq;
      out->iv = std::move(iv);
    }
    return true;
  };

  const auto hit = first_success(req.budget, kBatch, [&](std::uint64_t i) { return evaluate(i, nullptr); }, exec);
  if (!hit) return std::nullopt;
  BlockChoice choice;
  if (!evaluate(*hit, &choice)) throw InternalError("accepted candidate failed its re-evaluation");
  return choice;
}

Engine::Engine(NormalityProfile profile, Exec exec) : schedule_(std::move(profile)), exec_(exec) {
  state_.x = {schedule_.phase(0).s_star, 0, 0};
}

StageRecord Engine::step() {
  const StageState cur = state_;
  const PhaseParams& p0 = schedule_.phase(cur.j);
  const PhaseParams& p1 = schedule_.phase(cur.j + 1);
  StageRecord rec;
  rec.t = cur.t;
  rec.j_prev = cur.j;
  rec.ell_next = schedule_.ell(cur.j + 1, attempts_[cur.j + 1]);

  const std::uint64_t gap = position_gap(p0.s_star, p1.s_star);
  rec.cond1 = true;
  for (auto r : schedule_.growth_bases(cur.j)) {
    const std::uint64_t now = nat_pos(cur.b, BigInt(r));
    const std::uint64_t later = nat_pos(cur.b + gap + rec.ell_next, BigInt(r));
    if (!(BigInt(later - now) * BigInt(cur.j + 1) < BigInt(now))) {
      rec.cond1 = false;
      break;
    }
  }

  const AlphabetU& a0 = *p0.alphabet;
  const DigitBlock prefix = extract_digits(cur.x, a0.s, 0, nat_pos(cur.b, BigInt(a0.s)));
  rec.cond2_freq = chunk_frequency(prefix, a0.bias.d);
  const Rational cond2_bound = Rational(BigInt(1), pow(BigInt(a0.s), a0.n)) - *a0.bias.eps / 2;
  rec.cond2 = rec.cond2_freq && *rec.cond2_freq < cond2_bound;

  SAdicNumber y = cur.x;
  if (rec.cond1 && rec.cond2) {
    rec.j = cur.j + 1;
    const AdicInterval iv{p0.s_star, cur.x.prec, cur.x.numerator};
    const TadicChoice pick = leftmost_tadic_subinterval(iv, cur.b, p1.s_star);
    rec.a = pick.a;
    y = pick.y;
  } else {
    rec.j = cur.j;
    rec.a = cur.b;
  }

  std::optional<BlockChoice> choice;
  for (;;) {
    unsigned& attempt = attempts_[rec.j];
    rec.attempt = attempt;
    rec.ell = schedule_.ell(rec.j, attempt);
    FindRequest req{rec.j, rec.a, rec.ell, y, stream_seed(schedule_.profile().seed, cur.t, attempt),
                    schedule_.profile().budget};
    choice = find_block(schedule_, req, exec_);
    if (choice) break;
    if (++attempt > kMaxAttempts) throw InternalError("no admissible block after " + std::to_string(kMaxAttempts) + " doublings of l");
  }

  const PhaseParams& pj = schedule_.phase(rec.j);
  rec.b = rec.a + rec.ell;
  rec.prec = choice->x_next.prec;
  rec.candidates = choice->index + 1;
  rec.s_star = pj.s_star;
  rec.block = std::move(choice->block);
  rec.numerator = choice->x_next.numerator;
  rec.eta = certified::log_ratio_lower(pj.s_star, kEtaDigits);
  rec.ii = std::move(choice->ii);
  rec.iii = choice->iii;
  rec.iv = std::move(choice->iv);

  state_ = {cur.t + 1, rec.j, rec.b, std::move(choice->x_next)};
  return rec;
}

void Engine::run(const std::function<void(const StageRecord&)>& sink) {
  while (!done()) sink(step());
}

}  // namespace snorm
