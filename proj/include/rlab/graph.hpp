#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <unordered_map>
#include <vector>

#include "rlab/montecarlo.hpp"
#include "rlab/strategy.hpp"

namespace rlab {

inline constexpr Vertex kNilVertex = 0xFFFFFFFFu;

// Simple undirected graph with degree bound d, stored as n*d packed neighbor
// slots.  Querying a vertex yields its packed (sorted) neighbor list.
class BoundedDegreeGraph {
 public:
  BoundedDegreeGraph(std::size_t n, std::size_t d);

  std::size_t n() const { return n_; }
  std::size_t degree_bound() const { return d_; }
  std::size_t degree(Vertex v) const;
  std::size_t edge_count() const { return edges_; }

  // sorted packed neighbor list
  std::vector<Vertex> neighbor_list(Vertex v) const;

  void add_edge(Vertex u, Vertex v);
  void sort_slots();  // canonicalize slot order after construction

  bool has_edge(Vertex u, Vertex v) const;

 private:
  void check_vertex(Vertex v) const;

  std::size_t n_;
  std::size_t d_;
  std::size_t edges_ = 0;
  std::vector<Vertex> slots_;
};

Oracle<GraphModel> graph_oracle(std::shared_ptr<const BoundedDegreeGraph> g);

// Disjoint cover by s cycles of length t plus r isolated vertices, relabeled
// by a uniform permutation.  t*s + r = n.
struct CycleCoverSpec {
  std::size_t t = 3;  // cycle length
  std::size_t s = 0;  // number of cycles
  std::size_t r = 0;  // isolated remainder

  std::size_t n() const { return t * s + r; }

  // Covers by the longest cycles a radius-k scan cannot pin down (length
  // 2k+4) and by the shortest ones it can (length 2k+3).
  static CycleCoverSpec accepting(std::size_t n, std::size_t k);
  static CycleCoverSpec rejecting(std::size_t n, std::size_t k);
};

struct GeneratedGraph {
  std::shared_ptr<const BoundedDegreeGraph> graph;
  std::vector<std::int32_t> cycle_of;  // ground truth: cycle id per vertex, -1 isolated
};

GeneratedGraph sample_cover(const CycleCoverSpec& spec, std::size_t d, RandomStream& rng);

InstanceSampler<GraphModel> cover_sampler(CycleCoverSpec spec, std::size_t d);

// Exact "contains a cycle of length <= t" via per-source bounded breadth-first
// search (the classic girth scan).
bool has_cycle_leq(const BoundedDegreeGraph& g, std::size_t t);

// Breadth-first probe strategy: an opening batch of `sources` uniform vertices,
// then `rounds` batches querying every newly discovered vertex.  Rejects iff
// the answer-revealed subgraph contains a cycle of length <= reject_len.
// One-sided: a rejection exhibits the cycle's edges in the transcript.
Strategy<GraphModel> bfs_probe_tester(std::size_t n, std::size_t d, std::size_t rounds,
                                      std::size_t sources, std::size_t reject_len);

// Standard scan for girth testing at radius k: ceil(3/eps) sources and a
// rejection bound of at most 2k+2, the longest cycle a radius-k scan can
// fully witness from one source.
Strategy<GraphModel> bfs_cycle_tester(std::size_t n, std::size_t d, std::size_t k, double eps,
                                      std::size_t reject_len);

// Answer source that consults no graph at all: a fresh vertex gets two fresh
// labels from the shrinking unused pool, a vertex with one known neighbor
// gets that neighbor plus one fresh label.  Mimics cycle-cover answers
// conditioned on probes never colliding.
class AnswerSimulator {
 public:
  AnswerSimulator(std::size_t n, RandomStream rng);

  // One batch, processed in order; repeated queries replay their first answer.
  std::vector<std::vector<Vertex>> answer_round(const std::vector<Vertex>& queries);

 private:
  Vertex draw_from_pool();
  void remove_from_pool(Vertex v);

  std::size_t n_;
  RandomStream rng_;
  std::vector<Vertex> pool_;
  std::vector<std::uint32_t> pos_;  // label -> pool index, kNilVertex if absent
  std::vector<Vertex> known_;       // announced neighbor per label, kNilVertex if none
  std::unordered_map<Vertex, std::vector<Vertex>> memo_;  // first answer per queried label
};

// Run a strategy against the simulator instead of a graph.
Transcript<GraphModel> run_against_simulator(const Strategy<GraphModel>& strategy, std::size_t n,
                                             const RoundBudget& budget, std::uint64_t seed);

Estimate estimate_acceptance_simulated(const Strategy<GraphModel>& strategy, std::size_t n,
                                       const RoundBudget& budget, std::size_t trials,
                                       std::uint64_t seed);

struct GapEstimate {
  Estimate accepting;
  Estimate rejecting;
  double gap = 0.0;
  double ci = 0.0;  // sum of the two half-widths
};

GapEstimate estimate_gap(const Strategy<GraphModel>& strategy, const RoundBudget& budget,
                         std::size_t n, std::size_t k, std::size_t d, std::size_t trials,
                         std::uint64_t seed);

// Text format: first line "n d", then one line per vertex "v: u1 u2 ...".
void write_graph(std::ostream& os, const BoundedDegreeGraph& g);
BoundedDegreeGraph read_graph(std::istream& is);

}  // namespace rlab
