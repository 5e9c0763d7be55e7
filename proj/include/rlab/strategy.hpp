#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rlab/errors.hpp"
#include "rlab/oracle.hpp"
#include "rlab/rng.hpp"

namespace rlab {

// How the round structure is constrained:
//  - round_adaptive: k+1 batches; batch L may depend on answers to batches < L.
//  - tail_adaptive: one opening batch of any size, then single-query batches.
enum class Adaptivity { round_adaptive, tail_adaptive };

struct RoundBudget {
  std::size_t rounds = 0;       // adaptive rounds; a run has rounds+1 batches
  std::size_t max_queries = 1;  // total across all batches
  Adaptivity mode = Adaptivity::round_adaptive;

  RoundBudget(std::size_t rounds_, std::size_t max_queries_,
              Adaptivity mode_ = Adaptivity::round_adaptive)
      : rounds(rounds_), max_queries(max_queries_), mode(mode_) {
    if (max_queries == 0) throw BudgetExceeded("budget must allow at least one query");
    if (mode == Adaptivity::tail_adaptive && rounds > max_queries) {
      throw BudgetExceeded("tail budget needs one query per adaptive round");
    }
  }
};

template <class M>
struct RoundRecord {
  std::vector<typename M::Query> queries;
  std::vector<typename M::Answer> answers;

  bool operator==(const RoundRecord&) const = default;
};

template <class M>
struct Transcript {
  std::uint64_t seed = 0;
  std::vector<RoundRecord<M>> per_round;
  Verdict verdict;

  std::size_t rounds_used() const { return per_round.size(); }
  std::size_t total_queries() const {
    std::size_t n = 0;
    for (const auto& r : per_round) n += r.queries.size();
    return n;
  }

  bool operator==(const Transcript&) const = default;
};

// Per-run state of a strategy.  The runner drives it batch by batch:
// next_queries(L) is called only after observe() delivered the answers to
// every batch before L, so a run structurally cannot peek ahead.
template <class M>
class StrategyRun {
 public:
  virtual ~StrategyRun() = default;
  virtual std::vector<typename M::Query> next_queries(std::size_t round, RunRandomness& rand) = 0;
  virtual void observe(std::size_t round, const std::vector<typename M::Answer>& answers) = 0;
  virtual Verdict finalize(RunRandomness& rand) = 0;
};

template <class M>
struct Strategy {
  std::size_t rounds = 0;       // adaptive rounds the strategy uses
  std::size_t max_queries = 1;  // declared worst-case total queries
  Adaptivity mode = Adaptivity::round_adaptive;
  std::function<std::unique_ptr<StrategyRun<M>>()> start;
};

inline RoundBudget budget_of_rounds(std::size_t rounds, std::size_t max_queries,
                                    Adaptivity mode = Adaptivity::round_adaptive) {
  return RoundBudget(rounds, max_queries, mode);
}

template <class M>
RoundBudget budget_of(const Strategy<M>& s) {
  return RoundBudget(s.rounds, s.max_queries, s.mode);
}

// Convenience run implementation backed by callbacks over the accumulated
// (queries, answers) history.  Enough for most concrete strategies.
template <class M>
class CallbackRun : public StrategyRun<M> {
 public:
  using History = std::vector<RoundRecord<M>>;
  using NextFn = std::function<std::vector<typename M::Query>(std::size_t, RunRandomness&, const History&)>;
  using FinishFn = std::function<Verdict(RunRandomness&, const History&)>;

  CallbackRun(NextFn next, FinishFn finish)
      : next_(std::move(next)), finish_(std::move(finish)) {}

  std::vector<typename M::Query> next_queries(std::size_t round, RunRandomness& rand) override {
    auto qs = next_(round, rand, history_);
    history_.push_back({qs, {}});
    return qs;
  }

  void observe(std::size_t round, const std::vector<typename M::Answer>& answers) override {
    history_.at(round).answers = answers;
  }

  Verdict finalize(RunRandomness& rand) override { return finish_(rand, history_); }

 private:
  NextFn next_;
  FinishFn finish_;
  History history_;
};

template <class M>
Strategy<M> strategy_from_fns(std::size_t rounds, std::size_t max_queries, Adaptivity mode,
                              typename CallbackRun<M>::NextFn next,
                              typename CallbackRun<M>::FinishFn finish) {
  Strategy<M> s;
  s.rounds = rounds;
  s.max_queries = max_queries;
  s.mode = mode;
  s.start = [next = std::move(next), finish = std::move(finish)]() {
    return std::make_unique<CallbackRun<M>>(next, finish);
  };
  return s;
}

// Execute one run of `strategy` against `oracle` under `budget`.
//
// Budget enforcement is structural: the round count is checked up front, the
// query total as each batch is emitted, and in tail mode every batch after the
// first may carry at most one query.  The transcript records every batch in
// order, so round-L queries are a deterministic function of (seed, answers to
// rounds < L).
template <class M>
Transcript<M> run(const Strategy<M>& strategy, const Oracle<M>& oracle,
                  const RoundBudget& budget, std::uint64_t seed) {
  if (strategy.rounds > budget.rounds) {
    throw BudgetExceeded("strategy uses more adaptive rounds than the budget allows");
  }
  RunRandomness rand(seed);
  auto sr = strategy.start();
  Transcript<M> t;
  t.seed = seed;
  std::size_t total = 0;
  for (std::size_t round = 0; round <= strategy.rounds; ++round) {
    auto queries = sr->next_queries(round, rand);
    if (budget.mode == Adaptivity::tail_adaptive && round >= 1 && queries.size() > 1) {
      throw QueryShapeViolation("tail run emitted a multi-query batch after round 0");
    }
    total += queries.size();
    if (total > budget.max_queries) {
      throw BudgetExceeded("query total exceeds budget");
    }
    std::vector<typename M::Answer> answers;
    answers.reserve(queries.size());
    for (const auto& q : queries) answers.push_back(oracle.answer(q));
    sr->observe(round, answers);
    t.per_round.push_back({std::move(queries), std::move(answers)});
  }
  t.verdict = sr->finalize(rand);
  return t;
}

enum class Combiner { majority, any_reject };

namespace detail {

template <class M>
class AmplifiedRun : public StrategyRun<M> {
 public:
  AmplifiedRun(const Strategy<M>& base, std::size_t repetitions, Combiner combiner)
      : base_(base), repetitions_(repetitions), combiner_(combiner) {}

  std::vector<typename M::Query> next_queries(std::size_t round, RunRandomness& rand) override {
    if (copies_.empty()) {
      copies_.reserve(repetitions_);
      rands_.reserve(repetitions_);
      for (std::size_t i = 0; i < repetitions_; ++i) {
        copies_.push_back(base_.start());
        rands_.push_back(rand.child(0xA3F1u + i));
      }
    }
    std::vector<typename M::Query> batch;
    batch_sizes_.emplace_back();
    for (std::size_t i = 0; i < repetitions_; ++i) {
      auto qs = copies_[i]->next_queries(round, rands_[i]);
      batch_sizes_.back().push_back(qs.size());
      for (auto& q : qs) batch.push_back(std::move(q));
    }
    return batch;
  }

  void observe(std::size_t round, const std::vector<typename M::Answer>& answers) override {
    std::size_t offset = 0;
    for (std::size_t i = 0; i < repetitions_; ++i) {
      const std::size_t len = batch_sizes_.at(round)[i];
      std::vector<typename M::Answer> slice(answers.begin() + offset,
                                            answers.begin() + offset + len);
      offset += len;
      copies_[i]->observe(round, slice);
    }
  }

  Verdict finalize(RunRandomness&) override {
    std::size_t accepts = 0;
    for (std::size_t i = 0; i < repetitions_; ++i) {
      if (copies_[i]->finalize(rands_[i]).accept) ++accepts;
    }
    if (combiner_ == Combiner::majority) {
      return {2 * accepts > repetitions_, std::nullopt};
    }
    return {accepts == repetitions_, std::nullopt};  // any_reject
  }

 private:
  const Strategy<M>& base_;
  std::size_t repetitions_;
  Combiner combiner_;
  std::vector<std::unique_ptr<StrategyRun<M>>> copies_;
  std::vector<RunRandomness> rands_;
  std::vector<std::vector<std::size_t>> batch_sizes_;
};

}  // namespace detail

// Parallel repetition: run `repetitions` independent copies side by side,
// merging their batches round for round, and combine the verdicts.  Rounds are
// unchanged; the query total scales by `repetitions`.  Tail-restricted
// strategies are rejected: concatenating their tails would break the
// one-query-per-batch shape, and no other cheap composition preserves it.
template <class M>
Strategy<M> amplify(Strategy<M> base, std::size_t repetitions, Combiner combiner) {
  if (base.mode == Adaptivity::tail_adaptive) {
    throw UnsupportedStrategy("parallel repetition is not defined for tail-restricted strategies");
  }
  if (repetitions == 0) throw UnsupportedStrategy("repetitions must be >= 1");
  Strategy<M> s;
  s.rounds = base.rounds;
  s.max_queries = base.max_queries * repetitions;
  s.mode = base.mode;
  auto shared = std::make_shared<Strategy<M>>(std::move(base));
  s.start = [shared, repetitions, combiner]() {
    return std::make_unique<detail::AmplifiedRun<M>>(*shared, repetitions, combiner);
  };
  return s;
}

}  // namespace rlab
