#include "rlab/dtree.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace rlab {

namespace {

using Node = DecisionTree::Node;

std::size_t tuple_rank(const std::vector<std::size_t>& queries, std::uint32_t input) {
  std::size_t rank = 0;
  for (std::size_t v : queries) {
    rank = (rank << 1) | ((input >> (v - 1)) & 1u);
  }
  return rank;
}

void check_node(const Node& node, std::size_t num_vars) {
  if (node.is_leaf()) {
    if (!node.queries.empty()) throw DimensionMismatch("leaf with a query set");
    return;
  }
  if (node.queries.size() > kBatchVarCap) throw SizeCapExceeded("batch too wide");
  for (std::size_t v : node.queries) {
    if (v < 1 || v > num_vars) throw IndexOutOfRange("variable out of range");
  }
  if (node.children.size() != (std::size_t{1} << node.queries.size())) {
    throw DimensionMismatch("child count != 2^batch size");
  }
  for (const Node& c : node.children) check_node(c, num_vars);
}

const Node& walk(const Node& node, std::uint32_t input) {
  if (node.is_leaf()) return node;
  return walk(node.children[tuple_rank(node.queries, input)], input);
}

std::size_t depth_of(const Node& node) {
  if (node.is_leaf()) return 0;
  std::size_t best = 0;
  for (const Node& c : node.children) best = std::max(best, depth_of(c));
  return 1 + best;
}

std::size_t worst_of(const Node& node) {
  if (node.is_leaf()) return 0;
  std::size_t best = 0;
  for (const Node& c : node.children) best = std::max(best, worst_of(c));
  return node.queries.size() + best;
}

void union_of(const Node& node, std::set<std::size_t>& vars) {
  if (node.is_leaf()) return;
  vars.insert(node.queries.begin(), node.queries.end());
  for (const Node& c : node.children) union_of(c, vars);
}

}  // namespace

bool eval_tree(const DecisionTree& tree, std::uint32_t input) {
  check_node(tree.root, tree.num_vars);
  return walk(tree.root, input).verdict;
}

std::size_t tree_depth(const DecisionTree& tree) { return depth_of(tree.root); }

std::size_t tree_worst_case_queries(const DecisionTree& tree) { return worst_of(tree.root); }

std::vector<std::size_t> reachable_union(const DecisionTree& tree) {
  std::set<std::size_t> vars;
  union_of(tree.root, vars);
  return {vars.begin(), vars.end()};
}

DecisionTree expand_nonadaptive(const DecisionTree& tree) {
  check_node(tree.root, tree.num_vars);
  if (tree.root.is_leaf()) return tree;
  const auto vars = reachable_union(tree);
  if (vars.size() > kBatchVarCap) throw SizeCapExceeded("flattened batch too wide");
  DecisionTree out;
  out.num_vars = tree.num_vars;
  out.root.queries = vars;
  const std::size_t fanout = std::size_t{1} << vars.size();
  out.root.children.reserve(fanout);
  for (std::size_t rank = 0; rank < fanout; ++rank) {
    // lay the tuple back onto an input mask; unread variables stay 0
    std::uint32_t input = 0;
    for (std::size_t j = 0; j < vars.size(); ++j) {
      if ((rank >> (vars.size() - 1 - j)) & 1u) input |= 1u << (vars[j] - 1);
    }
    Node leaf;
    leaf.verdict = walk(tree.root, input).verdict;
    out.root.children.push_back(std::move(leaf));
  }
  return out;
}

namespace {

// first node per path with |Q| * k <= q merges with all its successor batches
Node contract_walk(const Node& node, std::size_t q, std::size_t k) {
  if (node.is_leaf()) return node;
  bool all_leaves = true;
  for (const Node& c : node.children) {
    if (!c.is_leaf()) {
      all_leaves = false;
      break;
    }
  }
  if (all_leaves) return node;  // final batch on this path: nothing left to merge
  if (node.queries.size() * k <= q) {
    std::set<std::size_t> merged_set(node.queries.begin(), node.queries.end());
    for (const Node& c : node.children) {
      merged_set.insert(c.queries.begin(), c.queries.end());
    }
    std::vector<std::size_t> merged(merged_set.begin(), merged_set.end());
    if (merged.size() > kBatchVarCap) throw SizeCapExceeded("merged batch too wide");
    Node out;
    out.queries = merged;
    const std::size_t fanout = std::size_t{1} << merged.size();
    out.children.reserve(fanout);
    for (std::size_t rank = 0; rank < fanout; ++rank) {
      std::uint32_t input = 0;
      for (std::size_t j = 0; j < merged.size(); ++j) {
        if ((rank >> (merged.size() - 1 - j)) & 1u) input |= 1u << (merged[j] - 1);
      }
      const Node& child = node.children[tuple_rank(node.queries, input)];
      if (child.is_leaf()) {
        out.children.push_back(child);
      } else {
        out.children.push_back(child.children[tuple_rank(child.queries, input)]);
      }
    }
    return out;
  }
  Node out;
  out.queries = node.queries;
  out.children.reserve(node.children.size());
  for (const Node& c : node.children) out.children.push_back(contract_walk(c, q, k));
  return out;
}

}  // namespace

DecisionTree contract_one_round(const DecisionTree& tree) {
  check_node(tree.root, tree.num_vars);
  const std::size_t depth = tree_depth(tree);
  if (depth < 2) throw UnsupportedStrategy("contraction needs at least two batches");
  const std::size_t q = tree_worst_case_queries(tree);
  const std::size_t k = depth - 1;
  DecisionTree out;
  out.num_vars = tree.num_vars;
  out.root = contract_walk(tree.root, q, k);
  return out;
}

namespace {

struct Materializer {
  const Strategy<PointModel>& strategy;
  std::size_t num_vars;
  std::size_t nodes = 0;

  Node build(std::vector<std::vector<Elem>>& prefix) {
    if (++nodes > kMaterializeCap) throw CapExceeded("answer space exceeds materialization cap");
    RunRandomness rand(0);  // deterministic strategies never consult it
    auto run = strategy.start();
    for (std::size_t j = 0; j < prefix.size(); ++j) {
      run->next_queries(j, rand);
      run->observe(j, prefix[j]);
    }
    if (prefix.size() == strategy.rounds + 1) {
      Node leaf;
      leaf.verdict = run->finalize(rand).accept;
      return leaf;
    }
    Node node;
    node.queries = run->next_queries(prefix.size(), rand);
    for (std::size_t v : node.queries) {
      if (v < 1 || v > num_vars) throw IndexOutOfRange("variable out of range");
    }
    if (node.queries.size() > kBatchVarCap) throw CapExceeded("batch too wide to materialize");
    const std::size_t fanout = std::size_t{1} << node.queries.size();
    node.children.reserve(fanout);
    for (std::size_t rank = 0; rank < fanout; ++rank) {
      std::vector<Elem> answers(node.queries.size());
      for (std::size_t j = 0; j < node.queries.size(); ++j) {
        answers[j] = static_cast<Elem>((rank >> (node.queries.size() - 1 - j)) & 1u);
      }
      prefix.push_back(std::move(answers));
      node.children.push_back(build(prefix));
      prefix.pop_back();
    }
    return node;
  }
};

}  // namespace

DecisionTree strategy_to_tree(const Strategy<PointModel>& strategy, std::size_t num_vars) {
  Materializer m{strategy, num_vars};
  std::vector<std::vector<Elem>> prefix;
  DecisionTree out;
  out.num_vars = num_vars;
  out.root = m.build(prefix);
  return out;
}

namespace {

class TreeReplayRun : public StrategyRun<PointModel> {
 public:
  explicit TreeReplayRun(const DecisionTree& tree) : cur_(&tree.root) {}

  std::vector<std::size_t> next_queries(std::size_t, RunRandomness&) override {
    if (cur_->is_leaf()) return {};
    return cur_->queries;
  }

  void observe(std::size_t, const std::vector<Elem>& answers) override {
    if (cur_->is_leaf()) return;
    std::size_t rank = 0;
    for (Elem a : answers) {
      if (a > 1) throw IndexOutOfRange("tree answers must be bits");
      rank = (rank << 1) | a;
    }
    cur_ = &cur_->children[rank];
  }

  Verdict finalize(RunRandomness&) override {
    if (!cur_->is_leaf()) throw DimensionMismatch("run ended above a leaf");
    return {cur_->verdict, std::nullopt};
  }

 private:
  const Node* cur_;
};

}  // namespace

Strategy<PointModel> tree_to_strategy(const DecisionTree& tree) {
  check_node(tree.root, tree.num_vars);
  Strategy<PointModel> s;
  s.rounds = tree_depth(tree) == 0 ? 0 : tree_depth(tree) - 1;
  s.max_queries = std::max<std::size_t>(tree_worst_case_queries(tree), 1);
  s.mode = Adaptivity::round_adaptive;
  auto shared = std::make_shared<const DecisionTree>(tree);
  s.start = [shared]() { return std::make_unique<TreeReplayRun>(*shared); };
  return s;
}

namespace {

nlohmann::json node_to_json(const Node& node) {
  if (node.is_leaf()) {
    return nlohmann::json{{"verdict", node.verdict ? "accept" : "reject"}};
  }
  nlohmann::json children = nlohmann::json::object();
  for (std::size_t rank = 0; rank < node.children.size(); ++rank) {
    std::string key(node.queries.size(), '0');
    for (std::size_t j = 0; j < node.queries.size(); ++j) {
      if ((rank >> (node.queries.size() - 1 - j)) & 1u) key[j] = '1';
    }
    children[key] = node_to_json(node.children[rank]);
  }
  return nlohmann::json{{"queries", node.queries}, {"children", std::move(children)}};
}

Node node_from_json(const nlohmann::json& j) {
  Node node;
  if (j.contains("verdict")) {
    const std::string v = j.at("verdict").get<std::string>();
    if (v != "accept" && v != "reject") throw DimensionMismatch("bad leaf verdict");
    node.verdict = v == "accept";
    return node;
  }
  node.queries = j.at("queries").get<std::vector<std::size_t>>();
  const auto& children = j.at("children");
  const std::size_t fanout = std::size_t{1} << node.queries.size();
  node.children.resize(fanout);
  if (children.size() != fanout) throw DimensionMismatch("child count != 2^batch size");
  for (auto it = children.begin(); it != children.end(); ++it) {
    const std::string& key = it.key();
    if (key.size() != node.queries.size()) throw DimensionMismatch("bad answer-tuple key");
    std::size_t rank = 0;
    for (char c : key) {
      if (c != '0' && c != '1') throw DimensionMismatch("bad answer-tuple key");
      rank = (rank << 1) | static_cast<std::size_t>(c == '1');
    }
    node.children[rank] = node_from_json(it.value());
  }
  return node;
}

}  // namespace

std::string write_tree(const DecisionTree& tree) {
  check_node(tree.root, tree.num_vars);
  nlohmann::json j{{"num_vars", tree.num_vars}, {"tree", node_to_json(tree.root)}};
  return j.dump(2) + "\n";
}

DecisionTree read_tree(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  DecisionTree tree;
  tree.num_vars = j.at("num_vars").get<std::size_t>();
  tree.root = node_from_json(j.at("tree"));
  check_node(tree.root, tree.num_vars);
  return tree;
}

DecisionTree random_tree(std::size_t num_vars, std::size_t depth, std::size_t max_batch,
                         RandomStream& rng) {
  if (num_vars == 0 || num_vars > kBatchVarCap) throw DimensionMismatch("bad variable count");
  const std::size_t width = std::min(max_batch, num_vars);
  struct Builder {
    std::size_t num_vars;
    std::size_t width;
    RandomStream& rng;

    Node build(std::size_t remaining) {
      Node node;
      if (remaining == 0) {
        node.verdict = rng.below(2) == 1;
        return node;
      }
      const std::size_t m = 1 + rng.below(width);
      std::vector<std::size_t> vars(num_vars);
      for (std::size_t i = 0; i < num_vars; ++i) vars[i] = i + 1;
      for (std::size_t i = 0; i < m; ++i) {
        std::swap(vars[i], vars[i + rng.below(num_vars - i)]);
      }
      vars.resize(m);
      std::sort(vars.begin(), vars.end());
      node.queries = vars;
      const std::size_t fanout = std::size_t{1} << m;
      node.children.reserve(fanout);
      for (std::size_t rank = 0; rank < fanout; ++rank) node.children.push_back(build(remaining - 1));
      return node;
    }
  };
  Builder b{num_vars, width, rng};
  DecisionTree tree;
  tree.num_vars = num_vars;
  tree.root = b.build(depth);
  return tree;
}

}  // namespace rlab
