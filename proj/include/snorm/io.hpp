#pragma once

// File formats. Rationals travel as "p/q" strings and big integers as decimal
// strings, so nothing in a log depends on floating point.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "snorm/alphabet.hpp"
#include "snorm/analyzer.hpp"
#include "snorm/engine.hpp"
#include "snorm/radix.hpp"

namespace snorm {

/// Malformed input file; `line` is 1-based, 0 when not line oriented.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

using ojson = nlohmann::ordered_json;

ojson record_to_json(const StageRecord& rec);
StageRecord record_from_json(const nlohmann::json& doc);

void write_stage_log(std::ostream& out, const std::vector<StageRecord>& log);
std::vector<StageRecord> read_stage_log(std::istream& in);

ojson sadic_to_json(const SAdicNumber& x);
SAdicNumber sadic_from_json(const nlohmann::json& doc);

/// The state after the last record: x together with its nat position b.
struct FinalState {
  SAdicNumber x;
  std::uint64_t b = 0;
  std::uint64_t stages = 0;
  std::uint64_t phase = 0;
};

ojson final_to_json(const FinalState& f);
FinalState final_from_json(const nlohmann::json& doc);
FinalState final_from_log(const std::vector<StageRecord>& log);

ojson alphabet_to_json(const AlphabetU& a);

/// One CSV line per (base, checkpoint, digit).
void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);

}  // namespace snorm
