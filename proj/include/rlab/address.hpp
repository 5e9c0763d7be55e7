#pragma once

#include <cstdint>
#include <vector>

#include "rlab/field.hpp"
#include "rlab/strategy.hpp"

namespace rlab {

// Pointer-chase evaluation over x in F_p^N with N = p.
//
// chain_0 = x_1, and chain_{j+1} = x_{chain_j + 1}: each value, shifted to
// 1-based, is the coordinate read next.  coords[j] is the coordinate queried
// to obtain values[j], so coords[0] = 1 and coords[j+1] = values[j] + 1.
struct PointerChain {
  std::vector<Elem> values;
  std::vector<std::size_t> coords;

  Elem final_value() const { return values.back(); }
};

inline constexpr std::size_t kChainCap = 1u << 20;

// Evaluate the pointer chain of length k+1 (values chain_0 .. chain_k).
PointerChain pointer_chain(const FieldVector& x, std::size_t k);

// 1 iff the k-step pointer chase lands on an even residue.
Elem address_bit(const FieldVector& x, std::size_t k);

// Pair variant, k >= 1: let i = chain_{k-1} + 1; output 1 iff x_i equals its
// cyclic successor x_{(i mod N) + 1}.
Elem address_pair_bit(const FieldVector& x, std::size_t k);

// Exact pointer-chase evaluator as a strategy: k+1 single-query batches.
// Batch 0 queries coordinate 1; batch j queries (answer of batch j-1) + 1.
// Accepts iff the final answer is even; `value` carries that answer.
Strategy<PointModel> address_bit_tester(std::uint32_t p, std::size_t k);

// Exact evaluator for the pair variant, k >= 1: k single-query chase batches,
// then one final batch querying both x_i and its cyclic successor.
// k+1 batches, k+2 queries total.
Strategy<PointModel> address_pair_tester(std::uint32_t p, std::size_t k);

// Table of address_bit (N = p coordinates).
FunctionTable address_bit_table(std::uint32_t p, std::size_t k);
FunctionTable address_pair_table(std::uint32_t p, std::size_t k);

// Minimum worst-case query count of a deterministic strategy computing the
// table exactly with the given number of adaptive rounds.
//
// exact=true demands a provably optimal answer and supports rounds <= 1:
//  - rounds 0: smallest coordinate set on whose fibers the function is
//    constant, found by subset enumeration in increasing size.
//  - rounds 1: minimize |S0| + max over first-batch answers of the smallest
//    determining set of the restricted function, over all first batches S0.
// exact=false returns an upper bound for any round count by restricting
// every batch before the last to a single coordinate and recursing.
std::size_t min_worst_case_queries(const FunctionTable& table, std::size_t rounds, bool exact);

}  // namespace rlab
