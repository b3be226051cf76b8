#include "snorm/profile.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace snorm {
namespace {

using nlohmann::json;

constexpr std::uint64_t kMaxBase = std::numeric_limits<std::uint32_t>::max();

std::uint64_t read_uint(const json& doc, const char* key, std::uint64_t fallback) {
  if (!doc.contains(key)) return fallback;
  const json& v = doc.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw std::invalid_argument(std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

// Exact integer e-th root if it exists.
std::uint64_t exact_root(std::uint64_t s, unsigned e) {
  std::uint64_t lo = 1, hi = 1;
  while (true) {
    bool over = false;
    std::uint64_t p = 1;
    for (unsigned i = 0; i < e && !over; ++i) over = __builtin_mul_overflow(p, hi, &p);
    if (over || p >= s) break;
    hi *= 2;
  }
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    bool over = false;
    std::uint64_t p = 1;
    for (unsigned i = 0; i < e && !over; ++i) over = __builtin_mul_overflow(p, mid, &p);
    if (over || p >= s) hi = mid; else lo = mid + 1;
  }
  std::uint64_t p = 1;
  bool over = false;
  for (unsigned i = 0; i < e && !over; ++i) over = __builtin_mul_overflow(p, lo, &p);
  return !over && p == s ? lo : 0;
}

ProfileEntry read_entry(const json& e) {
  if (!e.is_object()) throw std::invalid_argument("each entry must be an object");
  ProfileEntry out;
  const std::uint64_t s = read_uint(e, "s", 0);
  if (s < 2) throw std::invalid_argument("base s must be at least 2");
  if (s > kMaxBase) throw std::invalid_argument("base " + std::to_string(s) + " exceeds 2^32-1");
  if (auto [root, exp] = perfect_power(s); exp > 1)
    throw std::invalid_argument(std::to_string(s) + " = " + std::to_string(root) + "^" + std::to_string(exp) +
                                " is a perfect power, not a canonical base");
  out.s = static_cast<std::uint32_t>(s);
  if (!e.contains("M")) throw std::invalid_argument("entry for s=" + std::to_string(s) + " has no M");
  const json& m = e.at("M");
  if (m.is_string()) {
    if (m.get<std::string>() != "all") throw std::invalid_argument("M must be a list or \"all\"");
    out.all = true;
    out.m_max = read_uint(e, "m_max", 1);
    if (out.m_max < 1) throw std::invalid_argument("m_max must be positive");
    return out;
  }
  if (!m.is_array()) throw std::invalid_argument("M must be a list or \"all\"");
  for (const auto& v : m) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
      throw std::invalid_argument("M(" + std::to_string(s) + ") must hold positive integers");
    out.m.insert(v.get<std::uint64_t>());
  }
  for (auto x : out.m) {
    for (std::uint64_t d = 1; d < x; ++d) {
      if (x % d == 0 && !out.m.count(d))
        throw std::invalid_argument("divisor " + std::to_string(d) + " of " + std::to_string(x) + " missing from M(" +
                                    std::to_string(s) + ")");
    }
  }
  return out;
}

}  // namespace

std::pair<std::uint64_t, unsigned> perfect_power(std::uint64_t s) {
  for (unsigned e = 63; e >= 2; --e) {
    if (s < (std::uint64_t{1} << std::min(e, 63u))) continue;
    if (auto r = exact_root(s, e); r > 1) return {r, e};
  }
  return {s, 1};
}

NormalityProfile validate_profile(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("profile must be a JSON object");
  NormalityProfile p;
  if (!doc.contains("entries") || !doc.at("entries").is_array() || doc.at("entries").empty())
    throw std::invalid_argument("profile needs a non-empty 'entries' list");
  for (const auto& e : doc.at("entries")) p.entries.push_back(read_entry(e));
  std::sort(p.entries.begin(), p.entries.end(), [](const auto& a, const auto& b) { return a.s < b.s; });
  for (std::size_t i = 1; i < p.entries.size(); ++i) {
    if (p.entries[i].s == p.entries[i - 1].s)
      throw std::invalid_argument("base " + std::to_string(p.entries[i].s) + " listed twice");
  }
  p.n_max = read_uint(doc, "n_max", 1);
  if (p.n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  p.c = read_uint(doc, "c", 1);
  if (p.c < 1) throw std::invalid_argument("c must be at least 1");
  p.seed = read_uint(doc, "seed", 0);
  p.until_b = read_uint(doc, "until_b", 1000);
  if (p.until_b < 1) throw std::invalid_argument("until_b must be positive");
  p.budget = read_uint(doc, "budget", 4096);
  if (p.budget < 1) throw std::invalid_argument("budget must be positive");
  for (const auto& e : p.entries) {
    if (e.all) continue;
    bool free_n = false;
    for (std::uint64_t n = 1; n <= p.n_max; ++n) free_n = free_n || !e.m.count(n);
    if (!free_n)
      throw std::invalid_argument("M(" + std::to_string(e.s) + ") contains every n <= n_max = " + std::to_string(p.n_max));
  }
  return p;
}

nlohmann::ordered_json profile_to_json(const NormalityProfile& p) {
  nlohmann::ordered_json out;
  out["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : p.entries) {
    nlohmann::ordered_json je;
    je["s"] = e.s;
    if (e.all) {
      je["M"] = "all";
      je["m_max"] = e.m_max;
    } else {
      je["M"] = std::vector<std::uint64_t>(e.m.begin(), e.m.end());
    }
    out["entries"].push_back(je);
  }
  out["n_max"] = p.n_max;
  out["c"] = p.c;
  out["seed"] = p.seed;
  out["until_b"] = p.until_b;
  out["budget"] = p.budget;
  return out;
}

}  // namespace snorm
