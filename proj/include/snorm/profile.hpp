#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "snorm/arith.hpp"

namespace snorm {

struct ProfileEntry {
  std::uint32_t s = 2;
  bool all = false;        // M(s) is every positive integer
  IntSet m;                // when finite
  std::uint64_t m_max = 0; // bases s^1..s^m_max are tracked when `all`
};

struct NormalityProfile {
  std::vector<ProfileEntry> entries;  // sorted by s
  std::uint64_t n_max = 1;
  std::uint64_t c = 1;
  std::uint64_t seed = 0;
  std::uint64_t until_b = 1000;
  std::uint64_t budget = 4096;  // candidates per ℓ attempt
};

/// Throws std::invalid_argument with a message naming the offending value.
NormalityProfile validate_profile(const nlohmann::json& doc);

nlohmann::ordered_json profile_to_json(const NormalityProfile& p);

/// (b, e) with b^e = s and e ≥ 2 maximal, or e = 1 when s is not a perfect power.
std::pair<std::uint64_t, unsigned> perfect_power(std::uint64_t s);

}  // namespace snorm
