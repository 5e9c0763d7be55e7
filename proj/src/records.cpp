#include "rlab/records.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>

namespace rlab {

namespace {

using nlohmann::json;

template <class M>
json transcript_json(const Transcript<M>& t) {
  json rounds = json::array();
  for (const auto& r : t.per_round) {
    json jr;
    jr["queries"] = r.queries;
    jr["answers"] = r.answers;
    rounds.push_back(std::move(jr));
  }
  json verdict;
  verdict["accept"] = t.verdict.accept;
  if (t.verdict.value) verdict["value"] = *t.verdict.value;
  json j;
  j["seed"] = t.seed;
  j["rounds_used"] = t.rounds_used();
  j["total_queries"] = t.total_queries();
  j["per_round"] = std::move(rounds);
  j["verdict"] = std::move(verdict);
  return j;
}

}  // namespace

std::string transcript_record(const Transcript<PointModel>& t) {
  return transcript_json(t).dump();
}
std::string transcript_record(const Transcript<LinearModel>& t) {
  return transcript_json(t).dump();
}
std::string transcript_record(const Transcript<GraphModel>& t) {
  return transcript_json(t).dump();
}

std::string table_record(const FunctionTable& t) {
  json j;
  j["p"] = t.p;
  j["N"] = t.N;
  j["values"] = t.values;
  return j.dump();
}

FunctionTable table_from_record(const std::string& text) {
  const json j = json::parse(text);
  FunctionTable t;
  t.p = j.at("p").get<std::uint32_t>();
  t.N = j.at("N").get<std::uint32_t>();
  t.values = j.at("values").get<std::vector<Elem>>();
  if (t.p < 2) throw DimensionMismatch("table modulus must be at least 2");
  const std::size_t expect = pow_checked(t.p, t.N, kEnumerationCap);
  if (t.values.size() != expect) {
    throw DimensionMismatch("table has the wrong number of values for p^N inputs");
  }
  for (Elem v : t.values) {
    if (v >= t.p) throw IndexOutOfRange("table value outside the field");
  }
  return t;
}

std::string code_record(const LinearCode& c) {
  json j;
  j["p"] = c.p;
  j["N"] = c.N;
  j["M"] = c.M;
  j["rows"] = c.rows;
  return j.dump();
}

LinearCode code_from_record(const std::string& text) {
  const json j = json::parse(text);
  LinearCode c;
  c.p = j.at("p").get<std::uint32_t>();
  c.N = j.at("N").get<std::uint32_t>();
  c.M = j.at("M").get<std::size_t>();
  c.rows = j.at("rows").get<std::vector<std::vector<Elem>>>();
  if (c.p < 2) throw DimensionMismatch("code modulus must be at least 2");
  if (c.rows.size() != c.M) throw DimensionMismatch("row count differs from declared M");
  for (const auto& row : c.rows) {
    if (row.size() != c.N) throw DimensionMismatch("row length differs from declared N");
    for (Elem v : row) {
      if (v >= c.p) throw IndexOutOfRange("row entry outside the field");
    }
  }
  c.delta = 1.0 - 1.0 / c.p;
  c.delta_radius = c.delta / 4.0;
  return c;
}

std::string word_record(const Word& w) {
  json j;
  j["p"] = w.p;
  j["entries"] = w.entries;
  return j.dump();
}

Word word_from_record(const std::string& text) {
  const json j = json::parse(text);
  Word w;
  w.p = j.at("p").get<std::uint32_t>();
  w.entries = j.at("entries").get<std::vector<Elem>>();
  if (w.p < 2) throw DimensionMismatch("word modulus must be at least 2");
  for (Elem v : w.entries) {
    if (v >= w.p) throw IndexOutOfRange("word entry outside the field");
  }
  return w;
}

std::string stream_header(const std::string& kind, const std::string& config_json) {
  json j;
  j["format"] = "rlab-records";
  j["version"] = kRecordFormatVersion;
  j["kind"] = kind;
  j["config"] = config_json.empty() ? json::object() : json::parse(config_json);
  return j.dump();
}

RecordStream::RecordStream(std::string kind, std::string config_json) {
  buffer_ = stream_header(kind, config_json);
  buffer_ += '\n';
}

void RecordStream::add(const std::string& record_line) {
  buffer_ += record_line;
  buffer_ += '\n';
}

std::string format_sig(double value) {
  char buf[40];
  if (std::isfinite(value) && value == std::floor(value) && std::fabs(value) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", value);
  } else {
    std::snprintf(buf, sizeof buf, "%.4g", value);
  }
  return buf;
}

std::string render_table(const std::vector<std::string>& headers,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) widths[c] = headers[c].size();
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size() && c < widths.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  auto emit_row = [&](const std::vector<std::string>& cells, std::string& out) {
    for (std::size_t c = 0; c < widths.size(); ++c) {
      const std::string& cell = (c < cells.size()) ? cells[c] : std::string();
      out += cell;
      if (c + 1 < widths.size()) out.append(widths[c] - cell.size() + 2, ' ');
    }
    out += '\n';
  };
  std::string out;
  emit_row(headers, out);
  std::vector<std::string> dashes;
  dashes.reserve(widths.size());
  for (std::size_t w : widths) dashes.emplace_back(w, '-');
  emit_row(dashes, out);
  for (const auto& row : rows) emit_row(row, out);
  return out;
}

}  // namespace rlab
