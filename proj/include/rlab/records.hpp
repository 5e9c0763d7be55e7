#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rlab/codes.hpp"
#include "rlab/field.hpp"
#include "rlab/oracle.hpp"
#include "rlab/strategy.hpp"

namespace rlab {

// Serialized artifact formats.  Every writer is deterministic: the same
// in-memory value always yields the same bytes, so record streams produced
// from the same configuration and seed compare byte for byte.

// Transcript record: {"seed", "rounds_used", "total_queries", "per_round",
// "verdict"}.  per_round lists {"queries", "answers"} per batch; the verdict
// carries "accept" and, when present, "value".
std::string transcript_record(const Transcript<PointModel>& t);
std::string transcript_record(const Transcript<LinearModel>& t);
std::string transcript_record(const Transcript<GraphModel>& t);

// Function table: {"p", "N", "values"} with values in lexicographic input
// order (first coordinate most significant).
std::string table_record(const FunctionTable& t);
FunctionTable table_from_record(const std::string& text);

// Code: {"p", "N", "M", "rows"} listing every evaluation row.
std::string code_record(const LinearCode& c);
LinearCode code_from_record(const std::string& text);

// Word over F_p: {"p", "entries"}.
std::string word_record(const Word& w);
Word word_from_record(const std::string& text);

// A record stream is line-oriented: a header line identifying the format
// version, the producing operation and its configuration, then one record
// per line.
inline constexpr int kRecordFormatVersion = 1;

std::string stream_header(const std::string& kind, const std::string& config_json);

class RecordStream {
 public:
  RecordStream(std::string kind, std::string config_json);

  void add(const std::string& record_line);
  const std::string& bytes() const { return buffer_; }

 private:
  std::string buffer_;
};

// Number formatting for printed summaries: 4 significant digits, trailing
// zeros trimmed, integers left untouched.
std::string format_sig(double value);

// Fixed-width text table; every cell is padded to its column width.
std::string render_table(const std::vector<std::string>& headers,
                         const std::vector<std::vector<std::string>>& rows);

}  // namespace rlab
