#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "rlab/address.hpp"
#include "rlab/records.hpp"

using namespace rlab;
using nlohmann::json;

TEST_CASE("transcript records expose the run exactly once, field for field") {
  const FieldVector x(5, {3, 1, 4, 0, 2});
  const auto t = run(address_bit_tester(5, 2), point_oracle(x), RoundBudget(2, 3), 99);
  const auto line = transcript_record(t);
  const auto j = json::parse(line);
  CHECK(j.at("seed") == 99);
  CHECK(j.at("rounds_used") == 3);
  CHECK(j.at("total_queries") == 3);
  REQUIRE(j.at("per_round").size() == 3);
  CHECK(j.at("per_round")[0].at("queries") == json::array({1}));
  CHECK(j.at("per_round")[0].at("answers") == json::array({3}));
  CHECK(j.at("per_round")[1].at("queries") == json::array({4}));
  CHECK(j.at("verdict").at("accept") == false);
  CHECK(j.at("verdict").at("value") == 3);
  CHECK(transcript_record(t) == line);  // byte stable
}

TEST_CASE("graph and linear transcripts serialize their richer query shapes") {
  Transcript<GraphModel> tg;
  tg.seed = 5;
  tg.per_round.push_back({{Vertex(2)}, {{Vertex(0), Vertex(7)}}});
  tg.verdict = {true, std::nullopt};
  const auto jg = json::parse(transcript_record(tg));
  CHECK(jg.at("per_round")[0].at("queries") == json::array({2}));
  CHECK(jg.at("per_round")[0].at("answers") == json::array({json::array({0, 7})}));
  CHECK_FALSE(jg.at("verdict").contains("value"));

  Transcript<LinearModel> tl;
  tl.seed = 6;
  tl.per_round.push_back({{{1, 0, 2}}, {Elem(2)}});
  tl.verdict = {false, Elem(2)};
  const auto jl = json::parse(transcript_record(tl));
  CHECK(jl.at("per_round")[0].at("queries") == json::array({json::array({1, 0, 2})}));
  CHECK(jl.at("verdict").at("value") == 2);
}

TEST_CASE("function tables round-trip and validate on the way in") {
  const auto t = address_bit_table(3, 1);
  const auto back = table_from_record(table_record(t));
  CHECK(back == t);

  CHECK_THROWS_AS(table_from_record(R"({"p":3,"N":2,"values":[0,1]})"), DimensionMismatch);
  CHECK_THROWS_AS(table_from_record(R"({"p":2,"N":1,"values":[0,2]})"), IndexOutOfRange);
  CHECK_THROWS_AS(table_from_record(R"({"p":1,"N":1,"values":[0]})"), DimensionMismatch);
}

TEST_CASE("codes and words round-trip with rows checked against the header") {
  const auto code = hadamard_code(3, 2);
  const auto back = code_from_record(code_record(code));
  CHECK(back.p == code.p);
  CHECK(back.N == code.N);
  CHECK(back.M == code.M);
  CHECK(back.rows == code.rows);
  CHECK(back.delta == doctest::Approx(code.delta));
  CHECK(back.delta_radius == doctest::Approx(code.delta_radius));

  CHECK_THROWS_AS(code_from_record(R"({"p":3,"N":2,"M":2,"rows":[[0,0]]})"),
                  DimensionMismatch);
  CHECK_THROWS_AS(code_from_record(R"({"p":3,"N":2,"M":1,"rows":[[0,3]]})"),
                  IndexOutOfRange);

  const Word w = encode(code, FieldVector(3, {1, 2}));
  CHECK(word_from_record(word_record(w)) == w);
  CHECK_THROWS_AS(word_from_record(R"({"p":3,"entries":[0,5]})"), IndexOutOfRange);
}

TEST_CASE("record streams start with a versioned header and append lines verbatim") {
  RecordStream s("chase-runs", R"({"p":5,"k":2})");
  s.add(R"({"seed":1})");
  s.add(R"({"seed":2})");
  const auto& bytes = s.bytes();
  const auto first_newline = bytes.find('\n');
  const auto header = json::parse(bytes.substr(0, first_newline));
  CHECK(header.at("format") == "rlab-records");
  CHECK(header.at("version") == kRecordFormatVersion);
  CHECK(header.at("kind") == "chase-runs");
  CHECK(header.at("config").at("p") == 5);
  CHECK(bytes.substr(first_newline + 1) == "{\"seed\":1}\n{\"seed\":2}\n");

  RecordStream again("chase-runs", R"({"p":5,"k":2})");
  again.add(R"({"seed":1})");
  again.add(R"({"seed":2})");
  CHECK(again.bytes() == bytes);  // byte-identical for identical content

  CHECK(json::parse(stream_header("x", "")).at("config") == json::object());
}

TEST_CASE("printed numbers carry four significant digits, integers stay whole") {
  CHECK(format_sig(1440) == "1440");
  CHECK(format_sig(0.1633333) == "0.1633");
  CHECK(format_sig(0.92) == "0.92");
  CHECK(format_sig(2.0 / 3.0) == "0.6667");
  CHECK(format_sig(0.000123456) == "0.0001235");
  CHECK(format_sig(123456.0) == "123456");
  CHECK(format_sig(0.0) == "0");
  CHECK(format_sig(1.0) == "1");
}

TEST_CASE("tables pad every column to its widest cell") {
  const auto text = render_table({"name", "value"}, {{"alpha", "1"}, {"b", "0.5"}});
  CHECK(text ==
        "name   value\n"
        "-----  -----\n"
        "alpha  1\n"
        "b      0.5\n");
}
