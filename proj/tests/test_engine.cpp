#include <doctest.h>

#include <cmath>

#include "snorm/analyzer.hpp"
#include "snorm/certified.hpp"
#include "snorm/engine.hpp"

using namespace snorm;
using nlohmann::json;

namespace {

NormalityProfile toy(std::uint64_t until_b = 2000, std::uint64_t seed = 42) {
  json doc = {{"entries", json::array({{{"s", 2}, {"M", {1}}}})}, {"n_max", 2}, {"c", 1},
              {"seed", seed}, {"until_b", until_b}};
  return validate_profile(doc);
}

std::string error_of(const json& doc) {
  try {
    validate_profile(doc);
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("validate_profile") {
  CHECK(error_of({{"entries", {{{"s", 4}, {"M", {1}}}}}}).find("4 = 2^2") != std::string::npos);
  CHECK(error_of({{"entries", {{{"s", 8}, {"M", {1}}}}}}).find("2^3") != std::string::npos);
  CHECK(error_of({{"entries", {{{"s", 9}, {"M", {1}}}}}}).find("3^2") != std::string::npos);
  CHECK(error_of({{"entries", {{{"s", 2}, {"M", {2}}}}}}).find("divisor 1 of 2 missing") != std::string::npos);
  CHECK(error_of({{"entries", json::array()}}) != "");
  CHECK(error_of({{"entries", {{{"s", 2}, {"M", {1}}}}}, {"n_max", 0}}) != "");
  CHECK(error_of({{"entries", {{{"s", 2}, {"M", {1}}}}}, {"n_max", 1}}).find("every n") != std::string::npos);
  CHECK(error_of({{"entries", {{{"s", 2}, {"M", {1}}}, {{"s", 2}, {"M", {1}}}}}, {"n_max", 2}}) != "");

  const auto p = validate_profile({{"entries", {{{"s", 2}, {"M", {1, 2}}}}}, {"n_max", 4}});
  CHECK(p.entries.size() == 1);
  CHECK(p.entries[0].m == IntSet{1, 2});
  CHECK(perfect_power(6).second == 1);
  CHECK(perfect_power(1u << 31).first == 2);
}

TEST_CASE("schedule: pairs, bases and p_j") {
  Schedule cyc(validate_profile({{"entries", {{{"s", 2}, {"M", {1}}}}}, {"n_max", 3}}));
  REQUIRE(cyc.pairs().size() == 2);
  CHECK(cyc.pairs()[0] == std::pair<std::uint32_t, std::uint64_t>{2, 2});
  CHECK(cyc.pairs()[1] == std::pair<std::uint32_t, std::uint64_t>{2, 3});
  CHECK(cyc.phase(0).n == 2);
  CHECK(cyc.phase(1).n == 3);
  CHECK(cyc.phase(2).n == 2);
  CHECK(cyc.phase(0).p == 1);  // r_list = {2}: 2^1 ≥ 2

  Schedule two(validate_profile({{"entries", {{{"s", 2}, {"M", {1, 2}}}}}, {"n_max", 3}}));
  CHECK(two.bases() == std::vector<std::uint64_t>{2, 4});
  CHECK(two.phase(1).r_list == std::vector<std::uint64_t>{2, 4});
  CHECK(two.phase(1).p == 2);  // 2^2 ≥ 4 and 4^2 ≥ 4, while 2^1 < 4
  CHECK(two.r(7) == 4);        // saturates

  Schedule mixed(validate_profile(
      {{"entries", {{{"s", 2}, {"M", {1}}}, {{"s", 3}, {"M", "all"}, {"m_max", 2}}}}, {"n_max", 3}}));
  CHECK(mixed.bases() == std::vector<std::uint64_t>{2, 3, 9});
  CHECK(mixed.pairs().size() == 2);

  CHECK_THROWS_AS(Schedule(validate_profile({{"entries", {{{"s", 3}, {"M", "all"}}}}})), std::invalid_argument);
}

TEST_CASE("ell(j)") {
  Schedule sched(toy());
  const PhaseParams& ph = sched.phase(0);
  CHECK(ph.s_star == pow(BigInt(2), 16));
  // j = 0, r_0 = 2, p_0 = 1, s*_{-1} = s*_0: ℓ ≥ ln 2 · (max(6, 2⌈4 ln s*⌉·2) + 1)
  const double ln_star = 16 * std::log(2.0);
  const double bound = std::max(6.0, 2 * std::ceil(4 * ln_star) * 2);
  CHECK(sched.ell(0, 0) == static_cast<std::uint64_t>(std::ceil(std::log(2.0) * (bound + 1))));
  CHECK(sched.ell(0, 0) == 126);
  for (unsigned a = 0; a < 5; ++a) CHECK(sched.ell(0, a + 1) == 2 * sched.ell(0, a));
  for (std::uint64_t j = 0; j < 4; ++j) {
    const PhaseParams& pj = sched.phase(j);
    for (std::uint64_t k = 0; k <= j; ++k) {
      const double need = std::log(double(sched.r(k))) * (3.0 * sched.phase(k).p * double(j + 2) + 1);
      CHECK(double(pj.base_ell) >= need);
    }
  }
}

TEST_CASE("power_at_least_exp agrees across its exact and logarithmic regimes") {
  for (std::uint64_t b : {1ull, 17ull, 1000ull, 50000ull, 200000ull}) {
    for (std::uint64_t r : {2ull, 3ull, 10ull, 65536ull}) {
      const std::uint64_t p = nat_pos(b, BigInt(r));
      CHECK(certified::power_at_least_exp(BigInt(r), p, b));
      CHECK_FALSE(certified::power_at_least_exp(BigInt(r), p - 1, b));
      CHECK(pos_by_powers(b, BigInt(r)) == p);
    }
  }
}

TEST_CASE("first stage and find_block") {
  Engine eng(toy(), Exec::serial);
  CHECK(eng.state().t == 0);
  CHECK(eng.state().j == 0);
  CHECK(eng.state().b == 0);
  CHECK(eng.state().x.prec == 0);
  CHECK(eng.state().x.numerator == 0);

  const StageRecord rec = eng.step();
  CHECK_FALSE(rec.cond2_freq.has_value());
  CHECK_FALSE(rec.cond2);
  CHECK(rec.j == 0);
  CHECK(rec.b > 0);

  // Serial and parallel search pick the same candidate.
  Schedule sched(toy());
  const BigInt star = sched.phase(0).s_star;
  const std::uint64_t a = rec.b;
  const SAdicNumber y{star, nat_pos(a, star), eng.state().x.numerator};
  const FindRequest req{0, a, sched.ell(0, 0), y, stream_seed(42, 1, 0), 256};
  const auto s1 = find_block(sched, req, Exec::serial);
  const auto s2 = find_block(sched, req, Exec::parallel);
  REQUIRE(s1);
  REQUIRE(s2);
  CHECK(s1->index == s2->index);
  CHECK(s1->block == s2->block);
  CHECK(s1->x_next == s2->x_next);
  const Rational lo = y.value();
  const Rational hi = lo + Rational(BigInt(1), pow(star, y.prec));
  CHECK(s1->x_next.value() >= lo);
  CHECK(s1->x_next.value() < hi);
  CHECK_THROWS_AS(find_block(sched, {0, a, 126, SAdicNumber{star, y.prec + 1, 0}, 1, 1}, Exec::serial),
                  std::invalid_argument);
}

TEST_CASE("candidate letters avoid the excluded blocks") {
  const AlphabetU a = balanced_alphabet(2, {}, 1, 1);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const DigitBlock w = candidate_block(a, 3, 99, i);
    REQUIRE(w.size() == 3 * a.block_length());
    for (const auto& letter : parse_blocks(w, a.block_length())) CHECK(a.contains(letter));
  }
}

TEST_CASE("toy run invariants") {
  const NormalityProfile prof = toy();
  Engine eng(prof);
  std::vector<StageRecord> log;
  std::vector<StageState> states{eng.state()};
  eng.run([&](const StageRecord& r) {
    log.push_back(r);
    states.push_back(eng.state());
  });
  REQUIRE(log.size() >= 2);
  CHECK(eng.state().b >= prof.until_b);
  CHECK(log.back().j >= 1);

  for (std::size_t t = 0; t < log.size(); ++t) {
    const StageState& cur = states[t];
    const StageState& next = states[t + 1];
    CHECK(next.j >= cur.j);
    CHECK(next.b > cur.b);
    // x_{t+1} stays in the interval of x_t.
    const Rational lo = cur.x.value();
    const Rational hi = lo + Rational(BigInt(1), pow(cur.x.base, cur.x.prec));
    CHECK(next.x.value() >= lo);
    CHECK(next.x.value() < hi);
    CHECK(log[t].eta > 0);
    CHECK(log[t].eta < 1);
    CHECK(log[t].j == (log[t].cond1 && log[t].cond2 ? cur.j + 1 : cur.j));
    for (const auto& [m, d] : log[t].ii) CHECK(d < Rational(BigInt(1), BigInt(log[t].j + 1)));
    for (const auto& [r, d] : log[t].iv) CHECK(d < Rational(BigInt(1), BigInt(log[t].j + 1)));
    if (log[t].cond2) {
      Schedule sched(prof);
      const AlphabetU& a = *sched.phase(cur.j).alphabet;
      CHECK(*log[t].cond2_freq < Rational(BigInt(1), pow(BigInt(a.s), a.n)) - *a.bias.eps / 2);
    }
  }
  CHECK(verify_stage_log(log, prof).ok);
}

TEST_CASE("determinism and seeds") {
  auto collect = [](const NormalityProfile& p, Exec exec) {
    Engine eng(p, exec);
    std::vector<DigitBlock> blocks;
    eng.run([&](const StageRecord& r) { blocks.push_back(r.block); });
    return blocks;
  };
  const auto a = collect(toy(800), Exec::parallel);
  CHECK(a == collect(toy(800), Exec::parallel));
  CHECK(a == collect(toy(800), Exec::serial));
  CHECK(a != collect(toy(800, 7), Exec::parallel));
}

TEST_CASE("eta grows with c") {
  const AlphabetU c1 = balanced_alphabet(2, {1}, 2, 1);
  const AlphabetU c2 = balanced_alphabet(2, {1}, 2, 2);
  const Rational e1 = certified::log_ratio_lower(pow(BigInt(2), c1.ell_u.get_ui()), 15);
  const Rational e2 = certified::log_ratio_lower(pow(BigInt(2), c2.ell_u.get_ui()), 15);
  CHECK(e1 < e2);
  CHECK(e2 < 1);
}
