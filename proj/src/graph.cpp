#include "rlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace rlab {

BoundedDegreeGraph::BoundedDegreeGraph(std::size_t n, std::size_t d) : n_(n), d_(d) {
  if (d == 0) throw DimensionMismatch("degree bound must be positive");
  slots_.assign(n * d, kNilVertex);
}

void BoundedDegreeGraph::check_vertex(Vertex v) const {
  if (v >= n_) throw IndexOutOfRange("vertex id out of range");
}

std::size_t BoundedDegreeGraph::degree(Vertex v) const {
  check_vertex(v);
  std::size_t deg = 0;
  const std::size_t base = static_cast<std::size_t>(v) * d_;
  while (deg < d_ && slots_[base + deg] != kNilVertex) ++deg;
  return deg;
}

std::vector<Vertex> BoundedDegreeGraph::neighbor_list(Vertex v) const {
  check_vertex(v);
  const std::size_t base = static_cast<std::size_t>(v) * d_;
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < d_ && slots_[base + i] != kNilVertex; ++i) {
    out.push_back(slots_[base + i]);
  }
  return out;
}

bool BoundedDegreeGraph::has_edge(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  const std::size_t base = static_cast<std::size_t>(u) * d_;
  for (std::size_t i = 0; i < d_ && slots_[base + i] != kNilVertex; ++i) {
    if (slots_[base + i] == v) return true;
  }
  return false;
}

void BoundedDegreeGraph::add_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw DimensionMismatch("self loops are not allowed");
  if (has_edge(u, v)) throw DimensionMismatch("duplicate edge");
  const std::size_t du = degree(u);
  const std::size_t dv = degree(v);
  if (du >= d_ || dv >= d_) throw DimensionMismatch("degree bound exceeded");
  slots_[static_cast<std::size_t>(u) * d_ + du] = v;
  slots_[static_cast<std::size_t>(v) * d_ + dv] = u;
  ++edges_;
}

void BoundedDegreeGraph::sort_slots() {
  for (std::size_t v = 0; v < n_; ++v) {
    const std::size_t base = v * d_;
    std::size_t deg = 0;
    while (deg < d_ && slots_[base + deg] != kNilVertex) ++deg;
    std::sort(slots_.begin() + base, slots_.begin() + base + deg);
  }
}

Oracle<GraphModel> graph_oracle(std::shared_ptr<const BoundedDegreeGraph> g) {
  return {[g = std::move(g)](const Vertex& v) { return g->neighbor_list(v); }};
}

CycleCoverSpec CycleCoverSpec::accepting(std::size_t n, std::size_t k) {
  const std::size_t t = 2 * k + 4;
  CycleCoverSpec spec{t, n / t, n % t};
  return spec;
}

CycleCoverSpec CycleCoverSpec::rejecting(std::size_t n, std::size_t k) {
  const std::size_t t = 2 * k + 3;
  CycleCoverSpec spec{t, n / t, n % t};
  return spec;
}

GeneratedGraph sample_cover(const CycleCoverSpec& spec, std::size_t d, RandomStream& rng) {
  if (spec.t < 3) throw DimensionMismatch("cycle length must be at least 3");
  if (d < 2) throw DimensionMismatch("cycle cover needs degree bound >= 2");
  const std::size_t n = spec.n();
  // uniform relabeling of the canonical cover
  std::vector<Vertex> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<Vertex>(i);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.below(i)]);
  }
  auto g = std::make_shared<BoundedDegreeGraph>(n, d);
  GeneratedGraph out;
  out.cycle_of.assign(n, -1);
  for (std::size_t c = 0; c < spec.s; ++c) {
    const std::size_t base = c * spec.t;
    for (std::size_t j = 0; j < spec.t; ++j) {
      out.cycle_of[perm[base + j]] = static_cast<std::int32_t>(c);
      const std::size_t next = base + (j + 1) % spec.t;
      g->add_edge(perm[base + j], perm[next]);
    }
  }
  g->sort_slots();
  out.graph = std::move(g);
  return out;
}

InstanceSampler<GraphModel> cover_sampler(CycleCoverSpec spec, std::size_t d) {
  return [spec, d](RandomStream& rng) { return graph_oracle(sample_cover(spec, d, rng).graph); };
}

bool has_cycle_leq(const BoundedDegreeGraph& g, std::size_t t) {
  if (t < 3) return false;
  const std::size_t n = g.n();
  const std::size_t depth_limit = (t + 1) / 2;
  std::vector<std::size_t> dist(n);
  std::vector<Vertex> parent(n);
  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t epoch = 0;
  std::deque<Vertex> queue;
  for (std::size_t start = 0; start < n; ++start) {
    if (g.degree(static_cast<Vertex>(start)) < 2) continue;  // cannot lie on a cycle
    ++epoch;
    queue.clear();
    queue.push_back(static_cast<Vertex>(start));
    stamp[start] = epoch;
    dist[start] = 0;
    parent[start] = kNilVertex;
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      for (Vertex w : g.neighbor_list(u)) {
        if (stamp[w] != epoch) {
          stamp[w] = epoch;
          dist[w] = dist[u] + 1;
          parent[w] = u;
          if (dist[w] < depth_limit) queue.push_back(w);
        } else if (w != parent[u]) {
          // closed walk through the start; it contains a cycle of this length
          if (dist[u] + dist[w] + 1 <= t) return true;
        }
      }
    }
  }
  return false;
}

namespace {

class BfsProbeRun : public StrategyRun<GraphModel> {
 public:
  BfsProbeRun(std::size_t n, std::size_t d, std::size_t sources, std::size_t reject_len)
      : n_(n), d_(d), sources_(sources), reject_len_(reject_len) {}

  std::vector<Vertex> next_queries(std::size_t round, RunRandomness& rand) override {
    std::vector<Vertex> batch;
    if (round == 0) {
      for (std::size_t i = 0; i < sources_; ++i) {
        const Vertex v = static_cast<Vertex>(rand.stream().below(n_));
        if (!seen(v)) batch.push_back(v);
        mark_seen(v);
      }
    } else {
      batch = std::move(frontier_);
      frontier_.clear();
    }
    last_batch_ = batch;
    return batch;
  }

  void observe(std::size_t, const std::vector<std::vector<Vertex>>& answers) override {
    for (std::size_t i = 0; i < answers.size(); ++i) {
      const Vertex v = last_batch_[i];
      for (Vertex u : answers[i]) {
        witness_edge(v, u);
        if (!seen(u)) {  // newly discovered: query it next round
          frontier_.push_back(u);
          mark_seen(u);
        }
      }
    }
  }

  Verdict finalize(RunRandomness&) override {
    // compact the witnessed subgraph and look for a short cycle in it
    std::unordered_map<Vertex, Vertex> local;
    auto local_id = [&](Vertex v) {
      auto [it, fresh] = local.try_emplace(v, static_cast<Vertex>(local.size()));
      (void)fresh;
      return it->second;
    };
    for (const auto& e : edges_) {
      local_id(e.first);
      local_id(e.second);
    }
    BoundedDegreeGraph sub(local.size(), std::max<std::size_t>(d_, 1));
    for (const auto& e : edges_) sub.add_edge(local_id(e.first), local_id(e.second));
    const bool short_cycle = has_cycle_leq(sub, reject_len_);
    return {!short_cycle, std::nullopt};
  }

 private:
  bool seen(Vertex v) const { return seen_.count(v) > 0; }
  void mark_seen(Vertex v) { seen_.insert(v); }

  void witness_edge(Vertex a, Vertex b) {
    const auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    const std::uint64_t packed = (static_cast<std::uint64_t>(key.first) << 32) | key.second;
    if (edge_keys_.insert(packed).second) edges_.push_back(key);
  }

  std::size_t n_;
  std::size_t d_;
  std::size_t sources_;
  std::size_t reject_len_;
  std::unordered_set<Vertex> seen_;
  std::vector<Vertex> frontier_;
  std::vector<Vertex> last_batch_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::unordered_set<std::uint64_t> edge_keys_;
};

std::size_t bfs_query_bound(std::size_t d, std::size_t rounds, std::size_t sources) {
  std::size_t layer = sources;
  std::size_t total = sources;
  for (std::size_t j = 0; j < rounds; ++j) {
    layer *= d;
    total += layer;
  }
  return total;
}

}  // namespace

Strategy<GraphModel> bfs_probe_tester(std::size_t n, std::size_t d, std::size_t rounds,
                                      std::size_t sources, std::size_t reject_len) {
  if (n == 0 || sources == 0) throw DimensionMismatch("need a vertex range and >= 1 source");
  Strategy<GraphModel> s;
  s.rounds = rounds;
  s.max_queries = bfs_query_bound(d, rounds, sources);
  s.mode = Adaptivity::round_adaptive;
  s.start = [n, d, sources, reject_len]() {
    return std::make_unique<BfsProbeRun>(n, d, sources, reject_len);
  };
  return s;
}

Strategy<GraphModel> bfs_cycle_tester(std::size_t n, std::size_t d, std::size_t k, double eps,
                                      std::size_t reject_len) {
  if (eps <= 0.0 || eps > 1.0) throw DimensionMismatch("eps must lie in (0, 1]");
  if (reject_len > 2 * k + 2) {
    throw DimensionMismatch("a radius-k scan witnesses cycles of length at most 2k+2");
  }
  const std::size_t sources = static_cast<std::size_t>(std::ceil(3.0 / eps));
  return bfs_probe_tester(n, d, k, sources, reject_len);
}

AnswerSimulator::AnswerSimulator(std::size_t n, RandomStream rng) : n_(n), rng_(rng) {
  pool_.resize(n);
  pos_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    pool_[i] = static_cast<Vertex>(i);
    pos_[i] = static_cast<std::uint32_t>(i);
  }
  known_.assign(n, kNilVertex);
}

Vertex AnswerSimulator::draw_from_pool() {
  if (pool_.empty()) throw PoolExhausted("label pool is empty");
  const std::size_t idx = rng_.below(pool_.size());
  const Vertex v = pool_[idx];
  pool_[idx] = pool_.back();
  pos_[pool_[idx]] = static_cast<std::uint32_t>(idx);
  pool_.pop_back();
  pos_[v] = kNilVertex;
  return v;
}

void AnswerSimulator::remove_from_pool(Vertex v) {
  const std::uint32_t idx = pos_[v];
  if (idx == kNilVertex) return;
  pool_[idx] = pool_.back();
  pos_[pool_[idx]] = idx;
  pool_.pop_back();
  pos_[v] = kNilVertex;
}

std::vector<std::vector<Vertex>> AnswerSimulator::answer_round(const std::vector<Vertex>& queries) {
  for (Vertex v : queries) {
    if (v >= n_) throw IndexOutOfRange("vertex id out of range");
    remove_from_pool(v);  // queried labels leave the pool before any draw
  }
  std::vector<std::vector<Vertex>> answers;
  answers.reserve(queries.size());
  for (Vertex v : queries) {
    if (auto it = memo_.find(v); it != memo_.end()) {
      answers.push_back(it->second);  // identical answer on a repeated query
      continue;
    }
    std::vector<Vertex> ans;
    if (known_[v] != kNilVertex) {
      // boundary vertex: the known neighbor plus one fresh label
      const Vertex fresh = draw_from_pool();
      known_[fresh] = v;
      ans = {known_[v], fresh};
    } else {
      const Vertex a = draw_from_pool();
      const Vertex b = draw_from_pool();
      known_[a] = v;
      known_[b] = v;
      ans = {a, b};
    }
    std::sort(ans.begin(), ans.end());
    memo_.emplace(v, ans);
    answers.push_back(std::move(ans));
  }
  return answers;
}

Transcript<GraphModel> run_against_simulator(const Strategy<GraphModel>& strategy, std::size_t n,
                                             const RoundBudget& budget, std::uint64_t seed) {
  if (strategy.rounds > budget.rounds) {
    throw BudgetExceeded("strategy uses more adaptive rounds than the budget allows");
  }
  RunRandomness rand(seed);  // same derivation as run(): transcripts line up run for run
  AnswerSimulator sim(n, RandomStream(derive_seed(seed, 0x51)));
  auto sr = strategy.start();
  Transcript<GraphModel> t;
  t.seed = seed;
  std::size_t total = 0;
  for (std::size_t round = 0; round <= strategy.rounds; ++round) {
    auto queries = sr->next_queries(round, rand);
    if (budget.mode == Adaptivity::tail_adaptive && round >= 1 && queries.size() > 1) {
      throw QueryShapeViolation("tail run emitted a multi-query batch after round 0");
    }
    total += queries.size();
    if (total > budget.max_queries) throw BudgetExceeded("query total exceeds budget");
    auto answers = sim.answer_round(queries);
    sr->observe(round, answers);
    t.per_round.push_back({std::move(queries), std::move(answers)});
  }
  t.verdict = sr->finalize(rand);
  return t;
}

Estimate estimate_acceptance_simulated(const Strategy<GraphModel>& strategy, std::size_t n,
                                       const RoundBudget& budget, std::size_t trials,
                                       std::uint64_t seed) {
  std::size_t accepted = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, t);
    const auto tr = run_against_simulator(strategy, n, budget, derive_seed(trial_seed, 1));
    if (tr.verdict.accept) ++accepted;
  }
  Estimate e;
  e.trials = trials;
  e.accepted = accepted;
  e.probability = trials == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(trials);
  e.half_width = trials == 0 ? 1.0 : hoeffding_half_width(trials);
  return e;
}

GapEstimate estimate_gap(const Strategy<GraphModel>& strategy, const RoundBudget& budget,
                         std::size_t n, std::size_t k, std::size_t d, std::size_t trials,
                         std::uint64_t seed) {
  GapEstimate g;
  g.accepting = estimate_acceptance<GraphModel>(
      strategy, cover_sampler(CycleCoverSpec::accepting(n, k), d), budget, trials,
      derive_seed(seed, 0x9e5));
  g.rejecting = estimate_acceptance<GraphModel>(
      strategy, cover_sampler(CycleCoverSpec::rejecting(n, k), d), budget, trials,
      derive_seed(seed, 0x90));
  g.gap = std::abs(g.accepting.probability - g.rejecting.probability);
  g.ci = g.accepting.half_width + g.rejecting.half_width;
  return g;
}

void write_graph(std::ostream& os, const BoundedDegreeGraph& g) {
  os << g.n() << ' ' << g.degree_bound() << '\n';
  for (std::size_t v = 0; v < g.n(); ++v) {
    os << v << ':';
    for (Vertex u : g.neighbor_list(static_cast<Vertex>(v))) os << ' ' << u;
    os << '\n';
  }
}

BoundedDegreeGraph read_graph(std::istream& is) {
  std::size_t n = 0;
  std::size_t d = 0;
  std::string line;
  if (!std::getline(is, line)) throw DimensionMismatch("missing graph header line");
  {
    std::istringstream head(line);
    if (!(head >> n >> d)) throw DimensionMismatch("malformed graph header line");
  }
  std::vector<std::vector<Vertex>> lists(n);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw DimensionMismatch("malformed adjacency line");
    const std::size_t v = std::stoul(line.substr(0, colon));
    if (v >= n) throw IndexOutOfRange("vertex id out of range");
    std::istringstream rest(line.substr(colon + 1));
    Vertex u = 0;
    while (rest >> u) {
      if (u >= n) throw IndexOutOfRange("neighbor id out of range");
      lists[v].push_back(u);
    }
  }
  BoundedDegreeGraph g(n, d);
  for (std::size_t v = 0; v < n; ++v) {
    for (Vertex u : lists[v]) {
      if (u < v) g.add_edge(static_cast<Vertex>(v), u);  // add each edge once
    }
  }
  g.sort_slots();
  for (std::size_t v = 0; v < n; ++v) {  // adjacency lines must agree pairwise
    auto want = lists[v];
    std::sort(want.begin(), want.end());
    if (g.neighbor_list(static_cast<Vertex>(v)) != want) {
      throw DimensionMismatch("asymmetric adjacency lists");
    }
  }
  return g;
}

}  // namespace rlab
