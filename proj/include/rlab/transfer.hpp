#pragma once

#include <cstdint>
#include <vector>

#include "rlab/codes.hpp"
#include "rlab/field.hpp"
#include "rlab/strategy.hpp"

namespace rlab {

// Word property "is the encoding of some message the table maps to 1".
struct LiftedProperty {
  LinearCode code;
  FunctionTable table;
  std::vector<std::size_t> members;  // lexicographic ranks of messages with value 1
};

LiftedProperty lift_property(LinearCode code, FunctionTable table);

// Relative distance from w to the nearest member word; +infinity if the
// member list is empty.
double lifted_distance(const Word& w, const LiftedProperty& prop);

// Replace every word-entry probe by the linear query given by that entry's
// evaluation row.  Rounds, query counts, verdicts and randomness use are
// preserved exactly; on message oracles the answers coincide entry for entry
// with the word answers, so the wrapped tester cannot tell the difference.
// Callers testing membership at full strength invoke the underlying word
// tester with proximity parameter equal to the code's relative distance.
Strategy<LinearModel> to_linear_strategy(const Strategy<PointModel>& word_tester,
                                         const LinearCode& code);

// Constants of the decision-tree -> word-tester reduction.
struct WordTesterParams {
  double delta_star = 0.0;     // min(decoding radius, eps)
  std::size_t r_test = 0;      // linearity triples merged into the opening batch
  std::size_t r_dec = 0;       // decode repetitions per simulated dt query
  std::size_t copies = 5;      // parallel copies, majority vote
  std::size_t queries_per_decode = 2;
  std::size_t core_max_queries = 0;  // per copy
};

WordTesterParams word_tester_params(const LinearCode& code, double eps, std::size_t dt_queries);

// Turn an exact decision-tree evaluator over messages into a tester of the
// encoded word, preserving the round structure:
//  - the opening batch carries r_test linearity triples alongside the decode
//    batch for the tree's first queries (parallel composition by merging);
//  - every tree query is answered by the plurality of r_dec two-entry
//    decodes, ties toward the smaller field element;
//  - a failed linearity triple, or any decode spot-check returning no value,
//    latches an immediate reject (remaining batches still run, empty of
//    meaning but preserving the round count);
//  - the whole core is repeated in 5 parallel copies with a majority vote.
// When the tree side is exact the composite is one-sided on codewords.
Strategy<PointModel> to_word_tester(const Strategy<PointModel>& dt, const LinearCode& code,
                                    double eps, bool dt_exact, DecodeOptions decode_opts = {});

}  // namespace rlab
