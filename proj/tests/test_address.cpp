#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rlab/address.hpp"

using namespace rlab;

namespace {

FieldVector vec_at(std::uint32_t p, std::size_t rank) {
  return FieldVector(p, vec_unrank(rank, p, p));
}

}  // namespace

TEST_CASE("pointer chain follows values as 1-based coordinates") {
  // x = (3,1,4,0,2): chain 3 -> x_4 = 0 -> x_1 = 3 -> x_4 = 0.
  const FieldVector x(5, {3, 1, 4, 0, 2});
  const auto chain = pointer_chain(x, 3);
  CHECK(chain.values == std::vector<Elem>{3, 0, 3, 0});
  CHECK(chain.coords == std::vector<std::size_t>{1, 4, 1, 4});
  CHECK(address_bit(x, 0) == 0);
  CHECK(address_bit(x, 1) == 1);
  CHECK(address_bit(x, 2) == 0);
  CHECK(address_bit(x, 3) == 1);
}

TEST_CASE("pointer chain demands a square table") {
  CHECK_THROWS_AS(pointer_chain(FieldVector(5, {1, 2, 3}), 1), DimensionMismatch);
}

TEST_CASE("pair variant compares the addressed entry with its cyclic successor") {
  // x = (3,1,4,0,2), k = 1: i = chain_0 + 1 = 4, compare x_4 = 0 with x_5 = 2.
  const FieldVector x(5, {3, 1, 4, 0, 2});
  CHECK(address_pair_bit(x, 1) == 0);
  // k = 2: i = chain_1 + 1 = 1, compare x_1 = 3 with x_2 = 1.
  CHECK(address_pair_bit(x, 2) == 0);
  // y = (2,0,0,1,1), k = 1: i = 3, x_3 = 0 vs x_4 = 1 -> 0; k = 2:
  // chain_1 = y_3 = 0, i = 1, y_1 = 2 vs y_2 = 0 -> 0.
  const FieldVector y(5, {2, 0, 0, 1, 1});
  CHECK(address_pair_bit(y, 1) == 0);
  // z = (1,2,2,0,4), k = 1: i = chain_0 + 1 = 2, z_2 = 2 vs z_3 = 2 -> 1.
  const FieldVector z(5, {1, 2, 2, 0, 4});
  CHECK(address_pair_bit(z, 1) == 1);
  CHECK_THROWS_AS(address_pair_bit(x, 0), IndexOutOfRange);
}

TEST_CASE("chase tester reproduces the chase bit on every input") {
  for (std::uint32_t p : {3u, 5u}) {
    const std::size_t domain = pow_checked(p, p, kEnumerationCap);
    for (std::size_t k = 0; k <= 3; ++k) {
      const auto tester = address_bit_tester(p, k);
      const RoundBudget budget(k, k + 1);
      for (std::size_t r = 0; r < domain; ++r) {
        const FieldVector x = vec_at(p, r);
        const auto t = run(tester, point_oracle(x), budget, 0);
        REQUIRE(t.rounds_used() == k + 1);
        REQUIRE(t.total_queries() == k + 1);
        const Elem expect = address_bit(x, k);
        REQUIRE(t.verdict.accept == (expect == 1));
        REQUIRE(t.verdict.value == pointer_chain(x, k).final_value());
      }
    }
  }
}

TEST_CASE("chase tester emits one query per batch, matching the chain coords") {
  const FieldVector x(5, {3, 1, 4, 0, 2});
  const auto t = run(address_bit_tester(5, 3), point_oracle(x), RoundBudget(3, 4), 0);
  REQUIRE(t.per_round.size() == 4);
  const auto chain = pointer_chain(x, 3);
  for (std::size_t j = 0; j < 4; ++j) {
    REQUIRE(t.per_round[j].queries.size() == 1);
    CHECK(t.per_round[j].queries[0] == chain.coords[j]);
    CHECK(t.per_round[j].answers[0] == chain.values[j]);
  }
}

TEST_CASE("pair tester reproduces the pair bit with k+1 batches and k+2 queries") {
  for (std::uint32_t p : {3u, 5u}) {
    const std::size_t domain = pow_checked(p, p, kEnumerationCap);
    for (std::size_t k = 1; k <= 2; ++k) {
      const auto tester = address_pair_tester(p, k);
      const RoundBudget budget(k, k + 2);
      for (std::size_t r = 0; r < domain; ++r) {
        const FieldVector x = vec_at(p, r);
        const auto t = run(tester, point_oracle(x), budget, 0);
        REQUIRE(t.rounds_used() == k + 1);
        REQUIRE(t.total_queries() == k + 2);
        REQUIRE(t.verdict.accept == (address_pair_bit(x, k) == 1));
      }
    }
  }
}

TEST_CASE("tables list values in lexicographic input order") {
  for (std::uint32_t p : {3u, 5u}) {
    const auto table = address_bit_table(p, 2);
    REQUIRE(table.domain_size() == pow_checked(p, p, kEnumerationCap));
    for (std::size_t r = 0; r < table.domain_size(); r += 7) {
      CHECK(table.value_at(r) == address_bit(vec_at(p, r), 2));
    }
    const auto pair_table = address_pair_table(p, 1);
    for (std::size_t r = 0; r < pair_table.domain_size(); r += 11) {
      CHECK(pair_table.value_at(r) == address_pair_bit(vec_at(p, r), 1));
    }
  }
}

TEST_CASE("rank/unrank round-trips with the first coordinate most significant") {
  CHECK(vec_rank({1, 0, 2}, 3) == 11);
  CHECK(vec_unrank(11, 3, 3) == std::vector<Elem>{1, 0, 2});
  for (std::size_t r = 0; r < 27; ++r) {
    CHECK(vec_rank(vec_unrank(r, 3, 3), 3) == r);
  }
}

TEST_CASE("nonadaptive minimum distinguishes constants, dictators and parities") {
  const auto constant = build_table(3, 3, [](const std::vector<Elem>&) { return Elem(1); });
  CHECK(min_worst_case_queries(constant, 0, true) == 0);

  const auto dictator =
      build_table(3, 3, [](const std::vector<Elem>& x) { return Elem(x[1] % 2); });
  CHECK(min_worst_case_queries(dictator, 0, true) == 1);
  CHECK(min_worst_case_queries(dictator, 1, true) == 1);

  const auto parity = build_table(2, 3, [](const std::vector<Elem>& x) {
    return Elem((x[0] + x[1] + x[2]) % 2);
  });
  CHECK(min_worst_case_queries(parity, 0, true) == 3);
  // Parity gains nothing from adaptivity: every fiber still needs the rest.
  CHECK(min_worst_case_queries(parity, 1, true) == 3);
}

TEST_CASE("one-step chase needs p nonadaptive queries but only 2 with one round") {
  for (std::uint32_t p : {3u, 5u}) {
    const auto table = address_bit_table(p, 1);
    CHECK(min_worst_case_queries(table, 0, true) == p);
    CHECK(min_worst_case_queries(table, 1, true) == 2);
  }
}

TEST_CASE("upper-bound mode brackets the exact minimum") {
  const auto table = address_bit_table(3, 2);
  const std::size_t ub1 = min_worst_case_queries(table, 1, false);
  CHECK(ub1 >= min_worst_case_queries(table, 1, true));
  CHECK(ub1 <= 3 + 1);  // one coordinate, then everything a fiber still needs
  const std::size_t ub2 = min_worst_case_queries(table, 2, false);
  CHECK(ub2 >= 3);  // a 2-step chase cannot finish in fewer than 3 probes
  CHECK(ub2 <= ub1);
  CHECK_THROWS_AS(min_worst_case_queries(table, 2, true), UnsupportedStrategy);
}
