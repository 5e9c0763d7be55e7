#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rlab/field.hpp"
#include "rlab/oracle.hpp"
#include "rlab/rng.hpp"

namespace rlab {

// Linear code over F_p given by explicit evaluation rows: codeword entry i of
// message x is <rows[i], x> mod p.  Entries/rows are addressed 1-based.
struct LinearCode {
  std::uint32_t p = 2;
  std::uint32_t N = 1;   // message length
  std::size_t M = 1;     // word length (number of rows)
  std::vector<std::vector<Elem>> rows;
  double delta = 0.0;         // relative distance of the code
  double delta_radius = 0.0;  // decoding radius used by the reduction

  const std::vector<Elem>& row_support(std::size_t i) const {
    if (i < 1 || i > M) throw IndexOutOfRange("row index out of range");
    return rows[i - 1];
  }
};

// Word in F_p^M, entries addressed 1-based via word_oracle.
struct Word {
  std::uint32_t p = 2;
  std::vector<Elem> entries;

  bool operator==(const Word&) const = default;
};

// All-linear-functions code: one row per vector a in F_p^N in lexicographic
// order, so M = p^N.  Relative distance is exactly 1 - 1/p; the decoding
// radius is a quarter of that.
LinearCode hadamard_code(std::uint32_t p, std::uint32_t N);

Word encode(const LinearCode& code, const FieldVector& x);

Oracle<PointModel> word_oracle(Word w);

// Linearity check w[a] + w[b] == w[a+b] on random pairs.  The query plan and
// the pass/fail decision are exposed separately so a reduction can merge the
// plan into its own opening batch; `queries` returns 3*repetitions 1-based
// entry indices (a, b, a+b per repetition).
std::vector<std::size_t> linearity_queries(const LinearCode& code, std::size_t repetitions,
                                           RandomStream& rng);
// answers come in (a, b, a+b) triples, in plan order
bool linearity_passes(const LinearCode& code, const std::vector<Elem>& answers);

// One-sided standalone wrapper: accept iff every sampled triple checks out.
// Codewords always pass.
Verdict local_test(const LinearCode& code, const Oracle<PointModel>& word,
                   std::size_t repetitions, std::uint64_t seed);

// Recover x_i from two word entries: w[a + e_i] - w[a] for a random a.
// Exactly 2 queries; on a codeword the output is exact for every a.  With
// `spot_check` one random linearity triple is read as well (5 queries total)
// and a failed w[a'] + w[a''] == w[a' + a''] check yields nullopt instead of
// a decoded value.
struct DecodeOptions {
  bool spot_check = false;
};
std::optional<Elem> relaxed_decode(const LinearCode& code, const Oracle<PointModel>& word,
                                   std::size_t i, std::uint64_t seed,
                                   DecodeOptions opts = {});

// Same decode against answers gathered elsewhere: plan the 1-based entry
// indices, then combine the two answers.
std::vector<std::size_t> decode_queries(const LinearCode& code, std::size_t i, RandomStream& rng);
Elem decode_from_answers(const LinearCode& code, Elem ans_a, Elem ans_shifted);

// Brute-force nearest codeword: returns (message, relative distance), ties
// broken toward the lexicographically smallest message.
std::pair<FieldVector, double> exact_distance(const LinearCode& code, const Word& w);

}  // namespace rlab
