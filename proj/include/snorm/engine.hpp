#pragma once

// The stage recursion. Phase j fixes a pair (s_j, n_j), the Cantor alphabet
// U for it and the bases whose discrepancy must keep shrinking; each stage
// appends one block of U-letters chosen from a seeded candidate stream.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "snorm/alphabet.hpp"
#include "snorm/kernels.hpp"
#include "snorm/profile.hpp"
#include "snorm/radix.hpp"

namespace snorm {

struct PhaseParams {
  std::uint64_t j = 0;
  std::uint32_t s = 2;
  std::uint64_t n = 1;
  IntSet m;                                   // M(s_j)
  std::vector<std::uint64_t> r_list;          // r_0 .. r_min(j, |R|-1)
  std::uint64_t p = 1;
  BigInt s_star;                              // s_j^ℓ_U
  std::shared_ptr<const AlphabetU> alphabet;
  std::uint64_t base_ell = 1;                 // ℓ(j) before any doubling
  std::vector<std::uint64_t> check_bases;     // bases of condition (iv), ascending
};

/// Phase parameters for a validated profile, built lazily and cached.
class Schedule {
 public:
  explicit Schedule(NormalityProfile profile);

  const NormalityProfile& profile() const { return profile_; }
  const std::vector<std::pair<std::uint32_t, std::uint64_t>>& pairs() const { return pairs_; }
  /// Every tracked base s^m, ascending.
  const std::vector<std::uint64_t>& bases() const { return bases_; }

  const PhaseParams& phase(std::uint64_t j);
  /// r_k with the list saturating at its last element.
  std::uint64_t r(std::uint64_t k) const;
  /// ℓ(j) doubled `attempt` times.
  std::uint64_t ell(std::uint64_t j, unsigned attempt);
  /// Bases of condition (1) when leaving phase j.
  std::vector<std::uint64_t> growth_bases(std::uint64_t j);

 private:
  std::uint64_t least_p(std::uint64_t j) const;

  NormalityProfile profile_;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> pairs_;
  std::vector<std::uint64_t> bases_;
  std::map<std::pair<std::uint32_t, std::uint64_t>, std::shared_ptr<const AlphabetU>> alphabets_;
  std::map<std::uint64_t, PhaseParams> phases_;
};

struct StageState {
  std::uint64_t t = 0;
  std::uint64_t j = 0;
  std::uint64_t b = 0;
  SAdicNumber x;  // base s*_j, precision ⟨b; s*_j⟩
};

struct StageRecord {
  std::uint64_t t = 0;  // index of the state this stage started from
  std::uint64_t j_prev = 0;
  std::uint64_t j = 0;
  bool cond1 = false;
  bool cond2 = false;
  std::optional<Rational> cond2_freq;  // absent when the prefix has no n-chunk
  std::uint64_t ell_next = 0;          // ℓ(j_prev+1) used by condition (1)
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t ell = 0;
  unsigned attempt = 0;
  std::uint64_t prec = 0;
  std::uint64_t candidates = 0;        // draws consumed by the accepted attempt
  BigInt s_star;
  DigitBlock block;                    // w in base s_j
  BigInt numerator;                    // x_{t+1} = numerator · s*^(−prec)
  Rational eta;
  std::vector<std::pair<std::uint64_t, Rational>> ii;  // m ↦ D((w;m))
  Rational iii;                                        // frequency of d_j in (w;n_j)
  std::vector<std::pair<std::uint64_t, Rational>> iv;  // r ↦ D(u, B_r)
};

struct BlockChoice {
  SAdicNumber x_next;
  DigitBlock block;
  std::uint64_t index = 0;  // position in the candidate stream
  std::vector<std::pair<std::uint64_t, Rational>> ii;
  Rational iii;
  std::vector<std::pair<std::uint64_t, Rational>> iv;
};

struct FindRequest {
  std::uint64_t j = 0;
  std::uint64_t a = 0;
  std::uint64_t ell = 0;
  SAdicNumber y;
  std::uint64_t stream = 0;  // seed material: profile seed, stage, attempt
  std::uint64_t budget = 1;
};

/// First candidate in the seeded stream meeting (ii)–(iv), or nothing when
/// the budget runs out.
std::optional<BlockChoice> find_block(Schedule& schedule, const FindRequest& req, Exec exec);

/// The candidate block with the given stream index (base-s digits).
DigitBlock candidate_block(const AlphabetU& alphabet, std::uint64_t letters, std::uint64_t stream,
                           std::uint64_t index);

class Engine {
 public:
  explicit Engine(NormalityProfile profile, Exec exec = Exec::parallel);

  const StageState& state() const { return state_; }
  Schedule& schedule() { return schedule_; }
  bool done() const { return state_.b >= schedule_.profile().until_b; }

  StageRecord step();
  /// Steps until b ≥ until_b, handing every record to `sink`.
  void run(const std::function<void(const StageRecord&)>& sink);

  static constexpr unsigned kMaxAttempts = 12;

 private:
  Schedule schedule_;
  Exec exec_;
  StageState state_;
  std::map<std::uint64_t, unsigned> attempts_;  // persistent ℓ doublings per phase
};

/// Exact frequency of chunk d in (w;n); nothing when (w;n) is empty.
std::optional<Rational> chunk_frequency(const DigitBlock& w, const DigitBlock& d);

/// Stream seed for stage t, attempt k.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t t, unsigned attempt);

}  // namespace snorm
