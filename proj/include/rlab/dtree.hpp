#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rlab/strategy.hpp"

namespace rlab {

// Explicit decision tree over binary variables, queried in batches: an
// internal node asks a set of variables at once and branches on the full
// answer tuple.  Variables are 1-based; a node's child index ranks the tuple
// with the first listed variable as the most significant bit.
struct DecisionTree {
  struct Node {
    std::vector<std::size_t> queries;  // empty together with children => leaf
    std::vector<Node> children;        // size 2^|queries| when internal
    bool verdict = false;              // leaf payload

    bool is_leaf() const { return children.empty(); }
    bool operator==(const Node&) const = default;
  };

  Node root;
  std::size_t num_vars = 0;

  bool operator==(const DecisionTree&) const = default;
};

// Inputs are bitmasks: bit (v-1) holds variable v.
bool eval_tree(const DecisionTree& tree, std::uint32_t input);

std::size_t tree_depth(const DecisionTree& tree);              // max batches on a path
std::size_t tree_worst_case_queries(const DecisionTree& tree); // max total queries on a path
std::vector<std::size_t> reachable_union(const DecisionTree& tree);

inline constexpr std::size_t kBatchVarCap = 20;

// Collapse to a single batch querying the union of all reachable query sets,
// with one precomputed leaf per answer tuple.  The new batch size is at most
// 2^q - 1 for a tree of worst-case q queries.
DecisionTree expand_nonadaptive(const DecisionTree& tree);

// Remove one batch level: walking down each path, at the first node whose
// batch size is at most q/k (q = worst-case queries, k = depth-1; such a node
// exists on every full-depth path by averaging), merge that batch with all
// its possible successor batches into one and branch directly to the former
// grandchildren.  Verdicts are preserved on every input; the worst-case query
// count grows to at most q * (1 + 2^(q/k)).
DecisionTree contract_one_round(const DecisionTree& tree);

inline constexpr std::size_t kMaterializeCap = 1u << 18;

// Materialize a deterministic strategy with binary answers as an explicit
// tree by exploring every answer tuple.  The strategy must not consult its
// randomness stream.
DecisionTree strategy_to_tree(const Strategy<PointModel>& strategy, std::size_t num_vars);

// Replay a tree as a strategy (batches become rounds).
Strategy<PointModel> tree_to_strategy(const DecisionTree& tree);

// Nested text form; lossless round trip.
std::string write_tree(const DecisionTree& tree);
DecisionTree read_tree(const std::string& text);

// Uniform-depth random tree for experiments: every path has `depth` batches
// of 1..max_batch distinct variables, leaves carry random verdicts.
DecisionTree random_tree(std::size_t num_vars, std::size_t depth, std::size_t max_batch,
                         RandomStream& rng);

}  // namespace rlab
