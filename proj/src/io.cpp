#include "snorm/io.hpp"

#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace snorm {
namespace {

using nlohmann::json;

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::uint64_t get_uint(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number_unsigned()) throw ParseError(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

bool get_bool(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_boolean()) throw ParseError(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

std::string get_string(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

BigInt get_bigint(const json& doc, const char* key) {
  try {
    return parse_bigint(get_string(doc, key));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

Rational to_rational(const json& v, const char* key) {
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a \"p/q\" string");
  try {
    return parse_fraction(v.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

ojson pairs_to_json(const std::vector<std::pair<std::uint64_t, Rational>>& pairs, const char* key) {
  ojson out = ojson::array();
  for (const auto& [k, q] : pairs) out.push_back(ojson{{key, k}, {"D", to_fraction_string(q)}});
  return out;
}

std::vector<std::pair<std::uint64_t, Rational>> pairs_from_json(const json& doc, const char* name, const char* key) {
  const json& arr = field(doc, name);
  if (!arr.is_array()) throw ParseError(std::string("field '") + name + "' must be a list");
  std::vector<std::pair<std::uint64_t, Rational>> out;
  for (const auto& e : arr) out.emplace_back(get_uint(e, key), to_rational(field(e, "D"), "D"));
  return out;
}

std::string excluded_summary(const ExcludedBlock& x) { return x.threshold.str(); }

ojson excluded_to_json(const ExcludedBlock& x) {
  ojson tail = ojson::array();
  for (const auto& c : x.tail) tail.push_back(c.str());
  return ojson{{"threshold", excluded_summary(x)}, {"prefix_chunks", x.prefix_chunks.get_str()}, {"tail", tail}};
}

ojson big_number(const BigInt& v) {
  if (v.fits_ulong_p()) return ojson(static_cast<std::uint64_t>(v.get_ui()));
  return ojson(v.get_str());
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line)
    : std::invalid_argument(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

ojson record_to_json(const StageRecord& rec) {
  ojson out;
  out["t"] = rec.t;
  out["j_prev"] = rec.j_prev;
  out["j"] = rec.j;
  out["cond1"] = rec.cond1;
  out["cond2"] = rec.cond2;
  out["cond2_freq"] = rec.cond2_freq ? ojson(to_fraction_string(*rec.cond2_freq)) : ojson(nullptr);
  out["ell_next"] = rec.ell_next;
  out["a"] = rec.a;
  out["b"] = rec.b;
  out["ell"] = rec.ell;
  out["attempt"] = rec.attempt;
  out["prec"] = rec.prec;
  out["candidates"] = rec.candidates;
  out["s"] = rec.block.base();
  out["s_star"] = rec.s_star.get_str();
  out["block"] = rec.block.str();
  out["numerator"] = rec.numerator.get_str();
  out["eta"] = to_fraction_string(rec.eta);
  out["ii"] = pairs_to_json(rec.ii, "m");
  out["iii"] = to_fraction_string(rec.iii);
  out["iv"] = pairs_to_json(rec.iv, "r");
  return out;
}

StageRecord record_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("stage record must be an object");
  StageRecord rec;
  rec.t = get_uint(doc, "t");
  rec.j_prev = get_uint(doc, "j_prev");
  rec.j = get_uint(doc, "j");
  rec.cond1 = get_bool(doc, "cond1");
  rec.cond2 = get_bool(doc, "cond2");
  if (const json& f = field(doc, "cond2_freq"); !f.is_null()) rec.cond2_freq = to_rational(f, "cond2_freq");
  rec.ell_next = get_uint(doc, "ell_next");
  rec.a = get_uint(doc, "a");
  rec.b = get_uint(doc, "b");
  rec.ell = get_uint(doc, "ell");
  const std::uint64_t attempt = get_uint(doc, "attempt");
  if (attempt > Engine::kMaxAttempts) throw ParseError("attempt out of range");
  rec.attempt = static_cast<unsigned>(attempt);
  rec.prec = get_uint(doc, "prec");
  rec.candidates = get_uint(doc, "candidates");
  const std::uint64_t s = get_uint(doc, "s");
  if (s < 2 || s > std::numeric_limits<std::uint32_t>::max()) throw ParseError("field 's' out of range");
  rec.s_star = get_bigint(doc, "s_star");
  try {
    rec.block = DigitBlock::parse(get_string(doc, "block"), static_cast<std::uint32_t>(s));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("field 'block': ") + e.what());
  }
  rec.numerator = get_bigint(doc, "numerator");
  rec.eta = to_rational(field(doc, "eta"), "eta");
  rec.ii = pairs_from_json(doc, "ii", "m");
  rec.iii = to_rational(field(doc, "iii"), "iii");
  rec.iv = pairs_from_json(doc, "iv", "r");
  return rec;
}

void write_stage_log(std::ostream& out, const std::vector<StageRecord>& log) {
  for (const auto& rec : log) out << record_to_json(rec).dump() << '\n';
}

std::vector<StageRecord> read_stage_log(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  std::vector<StageRecord> log;
  std::size_t number = 0;
  for (std::size_t pos = 0; pos < text.size();) {
    ++number;
    const std::size_t end = text.find('\n', pos);
    // A complete log always ends with a newline; a missing one means truncation.
    if (end == std::string::npos) throw ParseError("last line is not newline-terminated (truncated file?)", number);
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    try {
      log.push_back(record_from_json(json::parse(line)));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), number);
    } catch (const json::exception& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), number);
    }
  }
  return log;
}

ojson sadic_to_json(const SAdicNumber& x) {
  return ojson{{"base", x.base.get_str()}, {"prec", x.prec}, {"numerator", x.numerator.get_str()}};
}

SAdicNumber sadic_from_json(const json& doc) {
  SAdicNumber x{get_bigint(doc, "base"), get_uint(doc, "prec"), get_bigint(doc, "numerator")};
  try {
    x.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return x;
}

ojson final_to_json(const FinalState& f) {
  ojson out;
  out["x"] = sadic_to_json(f.x);
  out["b"] = f.b;
  out["stages"] = f.stages;
  out["phase"] = f.phase;
  return out;
}

FinalState final_from_json(const json& doc) {
  return {sadic_from_json(field(doc, "x")), get_uint(doc, "b"), get_uint(doc, "stages"), get_uint(doc, "phase")};
}

FinalState final_from_log(const std::vector<StageRecord>& log) {
  if (log.empty()) throw ParseError("stage log is empty");
  const StageRecord& last = log.back();
  return {{last.s_star, last.prec, last.numerator}, last.b, log.size(), last.j};
}

ojson alphabet_to_json(const AlphabetU& a) {
  ojson out;
  out["s"] = a.s;
  out["M"] = std::vector<std::uint64_t>(a.m.begin(), a.m.end());
  out["n"] = a.n;
  out["c"] = a.c;
  out["u"] = a.pair.u.str();
  out["v"] = a.pair.v.str();
  out["ell"] = a.ell;
  out["ell_u"] = big_number(a.ell_u);
  out["materialized"] = a.materialized();
  out["z"] = a.z_digits ? ojson(a.z_digits->str()) : ojson(nullptr);
  out["z_tilde"] = a.z_tilde_digits ? ojson(a.z_tilde_digits->str()) : ojson(nullptr);
  out["z_implicit"] = excluded_to_json(a.z);
  out["z_tilde_implicit"] = a.z_tilde ? excluded_to_json(*a.z_tilde) : ojson(nullptr);
  out["d"] = a.bias.d.str();
  out["c_def"] = to_fraction_string(a.bias.c_def);
  out["eps"] = a.bias.eps ? ojson(to_fraction_string(*a.bias.eps)) : ojson(nullptr);
  out["eps_formula"] = a.eps_formula();
  return out;
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << "base,checkpoint,digit,count,freq_num,freq_den,discrepancy_num,discrepancy_den,discrepancy_float\n";
  std::ostringstream fl;
  for (const auto& row : rows) {
    fl.str("");
    fl << std::setprecision(17) << to_double(row.discrepancy);
    const std::string disc = row.discrepancy.get_num().get_str() + ',' + row.discrepancy.get_den().get_str() + ',' + fl.str();
    for (std::size_t d = 0; d < row.counts.size(); ++d) {
      Rational f(BigInt(static_cast<unsigned long>(row.counts[d])), BigInt(static_cast<unsigned long>(row.checkpoint)));
      f.canonicalize();
      out << row.base << ',' << row.checkpoint << ',' << d << ',' << row.counts[d] << ',' << f.get_num().get_str() << ','
          << f.get_den().get_str() << ',' << disc << '\n';
    }
  }
}

}  // namespace snorm
