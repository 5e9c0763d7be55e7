#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rlab/codes.hpp"

using namespace rlab;

namespace {

// Counting wrapper so tests can observe how many entries a decoder touched.
Oracle<PointModel> counting_oracle(const Word& w, std::size_t& count) {
  auto inner = word_oracle(w);
  return {[inner, &count](const std::size_t& i) {
    ++count;
    return inner.answer(i);
  }};
}

// Fraction of (a, b) pairs violating w[a] + w[b] == w[a+b], counted directly
// over the whole square so it shares nothing with the sampled test.
double exhaustive_violation_rate(const LinearCode& code, const Word& w) {
  std::size_t bad = 0;
  for (std::size_t ra = 0; ra < code.M; ++ra) {
    for (std::size_t rb = 0; rb < code.M; ++rb) {
      const auto a = vec_unrank(ra, code.p, code.N);
      const auto b = vec_unrank(rb, code.p, code.N);
      std::vector<Elem> sum(code.N);
      for (std::size_t j = 0; j < code.N; ++j) sum[j] = mod_add(a[j], b[j], code.p);
      const Elem lhs = mod_add(w.entries[ra], w.entries[rb], code.p);
      if (lhs != w.entries[vec_rank(sum, code.p)]) ++bad;
    }
  }
  return double(bad) / double(code.M * code.M);
}

}  // namespace

TEST_CASE("evaluation rows enumerate the whole space lexicographically") {
  const auto code = hadamard_code(3, 2);
  CHECK(code.M == 9);
  CHECK(code.delta == doctest::Approx(2.0 / 3.0));
  CHECK(code.delta_radius == doctest::Approx(1.0 / 6.0));
  CHECK(code.row_support(1) == std::vector<Elem>{0, 0});
  CHECK(code.row_support(2) == std::vector<Elem>{0, 1});
  CHECK(code.row_support(4) == std::vector<Elem>{1, 0});
  CHECK(code.row_support(9) == std::vector<Elem>{2, 2});
  CHECK_THROWS_AS(code.row_support(0), IndexOutOfRange);
  CHECK_THROWS_AS(code.row_support(10), IndexOutOfRange);
  CHECK_THROWS_AS(hadamard_code(4, 2), NonPrimeN);
}

TEST_CASE("encoding is the row-wise inner product and is linear in the message") {
  const auto code = hadamard_code(5, 2);
  const FieldVector x(5, {2, 3});
  const Word w = encode(code, x);
  REQUIRE(w.entries.size() == 25);
  for (std::size_t r = 0; r < code.M; ++r) {
    const auto& row = code.rows[r];
    CHECK(w.entries[r] == (row[0] * 2 + row[1] * 3) % 5);
  }
  const FieldVector y(5, {1, 4});
  const Word wy = encode(code, y);
  const Word wsum = encode(code, FieldVector(5, {3, 2}));  // x + y
  for (std::size_t r = 0; r < code.M; ++r) {
    CHECK(mod_add(w.entries[r], wy.entries[r], 5) == wsum.entries[r]);
  }
}

TEST_CASE("distinct codewords sit at relative distance exactly 1 - 1/p") {
  const auto code = hadamard_code(3, 2);
  std::vector<Word> words;
  for (std::size_t r = 0; r < 9; ++r) {
    words.push_back(encode(code, FieldVector(3, vec_unrank(r, 3, 2))));
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      std::size_t diff = 0;
      for (std::size_t e = 0; e < code.M; ++e) {
        if (words[i].entries[e] != words[j].entries[e]) ++diff;
      }
      CHECK(double(diff) / double(code.M) == doctest::Approx(code.delta));
    }
  }
}

TEST_CASE("nearest-codeword search returns the message and breaks ties low") {
  const auto code = hadamard_code(3, 2);
  const FieldVector x(3, {2, 1});
  Word w = encode(code, x);
  auto [msg, dist] = exact_distance(code, w);
  CHECK(msg == x);
  CHECK(dist == 0.0);

  w.entries[4] = mod_add(w.entries[4], 1, 3);  // one corrupted entry
  auto [msg2, dist2] = exact_distance(code, w);
  CHECK(msg2 == x);
  CHECK(dist2 == doctest::Approx(1.0 / 9.0));

  // All-zero word: every message with first row 0...0 scores entry 1 right;
  // the zero message matches everywhere and wins outright.
  Word zero{3, std::vector<Elem>(9, 0)};
  auto [msg3, dist3] = exact_distance(code, zero);
  CHECK(msg3 == FieldVector(3, {0, 0}));
  CHECK(dist3 == 0.0);

  // Genuine tie: this word splits the 6 differing positions of the (0,1) and
  // (0,2) codewords three against three, so both sit at distance 3/9 while
  // every other codeword sits at 6/9.  The smaller message must win.
  Word mixed{3, {0, 1, 1, 0, 1, 1, 0, 1, 1}};
  auto [msg4, dist4] = exact_distance(code, mixed);
  CHECK(msg4 == FieldVector(3, {0, 1}));
  CHECK(dist4 == doctest::Approx(3.0 / 9.0));
}

TEST_CASE("sampled linearity checks pass every codeword") {
  for (std::uint32_t p : {3u, 5u}) {
    const auto code = hadamard_code(p, 2);
    for (std::size_t r = 0; r < code.M; r += 3) {
      const Word w = encode(code, FieldVector(p, vec_unrank(r, p, 2)));
      const auto oracle = word_oracle(w);
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        REQUIRE(local_test(code, oracle, 6, seed).accept);
      }
    }
  }
}

TEST_CASE("planned triples and the pass decision agree with a direct recount") {
  const auto code = hadamard_code(3, 2);
  Word w = encode(code, FieldVector(3, {1, 2}));
  w.entries[6] = mod_add(w.entries[6], 2, 3);
  const auto oracle = word_oracle(w);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomStream rng(seed);
    const auto qs = linearity_queries(code, 5, rng);
    REQUIRE(qs.size() == 15);
    std::vector<Elem> answers;
    for (std::size_t q : qs) answers.push_back(oracle.answer(q));
    bool expect = true;
    for (std::size_t t = 0; t < 15; t += 3) {
      const auto a = code.row_support(qs[t]);
      const auto b = code.row_support(qs[t + 1]);
      std::vector<Elem> sum(2);
      for (std::size_t j = 0; j < 2; ++j) sum[j] = mod_add(a[j], b[j], 3);
      REQUIRE(code.row_support(qs[t + 2]) == sum);  // plan really queries a+b
      if (mod_add(answers[t], answers[t + 1], 3) != answers[t + 2]) expect = false;
    }
    REQUIRE(linearity_passes(code, answers) == expect);
  }
}

TEST_CASE("sampled rejection rate of a corrupted word tracks the exhaustive rate") {
  const auto code = hadamard_code(3, 2);
  Word w = encode(code, FieldVector(3, {0, 1}));
  w.entries[2] = mod_add(w.entries[2], 1, 3);
  const double v = exhaustive_violation_rate(code, w);
  CHECK(v > 0.2);  // a single bad entry already trips a constant fraction
  const std::size_t reps = 4;
  const double expect_accept = std::pow(1.0 - v, double(reps));
  const auto oracle = word_oracle(w);
  std::size_t accepted = 0;
  const std::size_t seeds = 2000;
  for (std::uint64_t s = 0; s < seeds; ++s) {
    if (local_test(code, oracle, reps, s).accept) ++accepted;
  }
  const double emp = double(accepted) / double(seeds);
  CHECK(std::fabs(emp - expect_accept) < 0.05);
}

TEST_CASE("two-point decode is exact on codewords for every coordinate") {
  for (std::uint32_t p : {3u, 5u}) {
    const auto code = hadamard_code(p, 3);
    const FieldVector x(p, {1, 0, p - 1});
    const Word w = encode(code, x);
    std::size_t count = 0;
    const auto oracle = counting_oracle(w, count);
    for (std::size_t i = 1; i <= 3; ++i) {
      for (std::uint64_t seed = 0; seed < 40; ++seed) {
        count = 0;
        const auto got = relaxed_decode(code, oracle, i, seed);
        REQUIRE(got == x.at1(i));
        REQUIRE(count == 2);
      }
    }
  }
}

TEST_CASE("decode correctness under one corrupted entry matches the counted rate") {
  // p = 5, N = 2: corrupting one of 25 entries leaves 23 of 25 random shifts
  // untouched, so the exact per-seed success rate is 0.92.
  const auto code = hadamard_code(5, 2);
  const FieldVector x(5, {3, 1});
  Word w = encode(code, x);
  w.entries[7] = mod_add(w.entries[7], 2, 5);
  const auto oracle = word_oracle(w);

  // Exhaustive recount over every base point a.
  std::size_t good = 0;
  for (std::size_t ra = 0; ra < code.M; ++ra) {
    auto a = vec_unrank(ra, 5, 2);
    auto shifted = a;
    shifted[0] = mod_add(shifted[0], 1, 5);
    const Elem va = w.entries[ra];
    const Elem vs = w.entries[vec_rank(shifted, 5)];
    if (mod_sub(vs, va, 5) == x.at1(1)) ++good;
  }
  CHECK(good == 23);

  std::size_t hits = 0;
  const std::size_t seeds = 4000;
  for (std::uint64_t s = 0; s < seeds; ++s) {
    if (relaxed_decode(code, oracle, 1, s) == x.at1(1)) ++hits;
  }
  CHECK(std::fabs(double(hits) / seeds - 23.0 / 25.0) < 0.02);
}

TEST_CASE("spot-check mode spends 5 queries and can refuse to decode") {
  const auto code = hadamard_code(3, 2);
  const FieldVector x(3, {1, 1});
  const Word clean = encode(code, x);
  std::size_t count = 0;
  const auto clean_oracle = counting_oracle(clean, count);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    count = 0;
    const auto got = relaxed_decode(code, clean_oracle, 2, seed, {.spot_check = true});
    REQUIRE(got == x.at1(2));
    REQUIRE(count == 5);
  }

  Word bad = clean;
  bad.entries[1] = mod_add(bad.entries[1], 1, 3);
  bad.entries[5] = mod_add(bad.entries[5], 2, 3);
  const auto bad_oracle = word_oracle(bad);
  std::size_t refused = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    if (!relaxed_decode(code, bad_oracle, 2, seed, {.spot_check = true})) ++refused;
  }
  CHECK(refused > 0);
}

TEST_CASE("decode plans stay inside the code and target the right shift") {
  const auto code = hadamard_code(5, 3);
  RandomStream rng(77);
  for (int rep = 0; rep < 50; ++rep) {
    for (std::size_t i = 1; i <= 3; ++i) {
      const auto qs = decode_queries(code, i, rng);
      REQUIRE(qs.size() == 2);
      const auto a = code.row_support(qs[0]);
      const auto s = code.row_support(qs[1]);
      for (std::size_t j = 0; j < 3; ++j) {
        if (j == i - 1) {
          CHECK(s[j] == mod_add(a[j], 1, 5));
        } else {
          CHECK(s[j] == a[j]);
        }
      }
    }
  }
  CHECK_THROWS_AS(decode_queries(code, 0, rng), IndexOutOfRange);
  CHECK_THROWS_AS(decode_queries(code, 4, rng), IndexOutOfRange);
}
