#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "rlab/montecarlo.hpp"
#include "rlab/strategy.hpp"

using namespace rlab;

namespace {

// Exact binomial tail P[B(n, p) >= k], summed with log-domain binomials so the
// reference does not share any code with the empirical estimate it checks.
double binomial_tail_geq(std::size_t n, double p, std::size_t k) {
  double total = 0.0;
  for (std::size_t j = k; j <= n; ++j) {
    const double log_choose = std::lgamma(double(n + 1)) - std::lgamma(double(j + 1)) -
                              std::lgamma(double(n - j + 1));
    total += std::exp(log_choose + double(j) * std::log(p) +
                      double(n - j) * std::log1p(-p));
  }
  return total;
}

// 0-round, 1-query coin: accepts with probability `bias` using run randomness
// only, ignoring the answer.
Strategy<PointModel> coin_strategy(double bias) {
  return strategy_from_fns<PointModel>(
      0, 1, Adaptivity::round_adaptive,
      [](std::size_t, RunRandomness&, const std::vector<RoundRecord<PointModel>>&) {
        return std::vector<std::size_t>{1};
      },
      [bias](RunRandomness& rand, const std::vector<RoundRecord<PointModel>>&) {
        return Verdict{rand.stream().bernoulli(bias), std::nullopt};
      });
}

const FieldVector kVec(5, {3, 1, 4, 0, 2});

}  // namespace

TEST_CASE("derived seeds are deterministic and collision-free across tags") {
  CHECK(derive_seed(42, 7) == derive_seed(42, 7));
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (std::uint64_t tag = 0; tag < 50; ++tag) {
      seen.insert(derive_seed(seed, tag));
    }
  }
  CHECK(seen.size() == 20 * 50);
}

TEST_CASE("below() stays in range and covers every residue") {
  RandomStream rng(123);
  std::set<std::uint64_t> hit;
  for (int i = 0; i < 1000; ++i) {
    const auto v = rng.below(7);
    REQUIRE(v < 7);
    hit.insert(v);
  }
  CHECK(hit.size() == 7);
}

TEST_CASE("unit() lands in [0,1) with a plausible mean") {
  RandomStream rng(99);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::fabs(sum / 10000 - 0.5) < 0.02);
}

TEST_CASE("fork and child derivations do not disturb the primary stream") {
  RunRandomness a(7);
  RunRandomness b(7);
  (void)a.fork(3);
  (void)a.child(9);
  CHECK(a.stream().next() == b.stream().next());
}

TEST_CASE("runner records every batch in order with matching answers") {
  // Two adaptive rounds of coordinate probes: 1, then the answer, then the
  // answer to that.
  auto s = strategy_from_fns<PointModel>(
      2, 3, Adaptivity::round_adaptive,
      [](std::size_t round, RunRandomness&, const std::vector<RoundRecord<PointModel>>& hist) {
        const std::size_t q = (round == 0) ? 1 : std::size_t(hist[round - 1].answers[0]) + 1;
        return std::vector<std::size_t>{q};
      },
      [](RunRandomness&, const std::vector<RoundRecord<PointModel>>& hist) {
        return Verdict{hist.back().answers[0] % 2 == 0, hist.back().answers[0]};
      });
  const auto t = run(s, point_oracle(kVec), RoundBudget(2, 3), 5);
  REQUIRE(t.rounds_used() == 3);
  CHECK(t.total_queries() == 3);
  // x = (3,1,4,0,2): query 1 -> 3, query 4 -> 0, query 1 -> 3.
  CHECK(t.per_round[0].queries == std::vector<std::size_t>{1});
  CHECK(t.per_round[0].answers == std::vector<Elem>{3});
  CHECK(t.per_round[1].queries == std::vector<std::size_t>{4});
  CHECK(t.per_round[1].answers == std::vector<Elem>{0});
  CHECK(t.per_round[2].queries == std::vector<std::size_t>{1});
  CHECK(t.per_round[2].answers == std::vector<Elem>{3});
  CHECK_FALSE(t.verdict.accept);
  CHECK(t.verdict.value == Elem{3});
}

TEST_CASE("identical seeds replay identical transcripts") {
  auto s = strategy_from_fns<PointModel>(
      1, 2, Adaptivity::round_adaptive,
      [](std::size_t, RunRandomness& rand, const std::vector<RoundRecord<PointModel>>&) {
        return std::vector<std::size_t>{rand.stream().below(5) + 1};
      },
      [](RunRandomness&, const std::vector<RoundRecord<PointModel>>& hist) {
        return Verdict{hist.back().answers[0] == 0, std::nullopt};
      });
  const auto a = run(s, point_oracle(kVec), RoundBudget(1, 2), 11);
  const auto b = run(s, point_oracle(kVec), RoundBudget(1, 2), 11);
  CHECK(a == b);
}

TEST_CASE("budgets bite: rounds up front, queries as they are spent") {
  auto two_round = strategy_from_fns<PointModel>(
      2, 3, Adaptivity::round_adaptive,
      [](std::size_t, RunRandomness&, const std::vector<RoundRecord<PointModel>>&) {
        return std::vector<std::size_t>{1};
      },
      [](RunRandomness&, const std::vector<RoundRecord<PointModel>>&) { return Verdict{}; });
  CHECK_THROWS_AS(run(two_round, point_oracle(kVec), RoundBudget(1, 10), 0), BudgetExceeded);
  CHECK_THROWS_AS(run(two_round, point_oracle(kVec), RoundBudget(2, 2), 0), BudgetExceeded);
  CHECK_NOTHROW(run(two_round, point_oracle(kVec), RoundBudget(2, 3), 0));
}

TEST_CASE("tail budgets reject wide batches after the opener") {
  auto wide_tail = strategy_from_fns<PointModel>(
      1, 4, Adaptivity::tail_adaptive,
      [](std::size_t round, RunRandomness&, const std::vector<RoundRecord<PointModel>>&) {
        return (round == 0) ? std::vector<std::size_t>{1, 2}
                            : std::vector<std::size_t>{3, 4};
      },
      [](RunRandomness&, const std::vector<RoundRecord<PointModel>>&) { return Verdict{}; });
  CHECK_THROWS_AS(
      run(wide_tail, point_oracle(kVec), RoundBudget(1, 4, Adaptivity::tail_adaptive), 0),
      QueryShapeViolation);
  // The same emission pattern is fine under an unrestricted round budget.
  auto wide_round = wide_tail;
  wide_round.mode = Adaptivity::round_adaptive;
  CHECK_NOTHROW(run(wide_round, point_oracle(kVec), RoundBudget(1, 4), 0));
  CHECK_THROWS_AS(RoundBudget(3, 2, Adaptivity::tail_adaptive), BudgetExceeded);
}

TEST_CASE("single-query strategies run unchanged under round and tail budgets") {
  auto chase = strategy_from_fns<PointModel>(
      2, 3, Adaptivity::tail_adaptive,
      [](std::size_t round, RunRandomness&, const std::vector<RoundRecord<PointModel>>& hist) {
        const std::size_t q = (round == 0) ? 2 : std::size_t(hist[round - 1].answers[0]) + 1;
        return std::vector<std::size_t>{q};
      },
      [](RunRandomness&, const std::vector<RoundRecord<PointModel>>& hist) {
        return Verdict{true, hist.back().answers[0]};
      });
  const auto t1 = run(chase, point_oracle(kVec), RoundBudget(2, 3, Adaptivity::tail_adaptive), 4);
  auto as_round = chase;
  as_round.mode = Adaptivity::round_adaptive;
  const auto t2 = run(as_round, point_oracle(kVec), RoundBudget(2, 3), 4);
  CHECK(t1 == t2);
}

TEST_CASE("parallel repetition keeps rounds, multiplies queries, merges batches") {
  auto base = strategy_from_fns<PointModel>(
      1, 2, Adaptivity::round_adaptive,
      [](std::size_t round, RunRandomness&, const std::vector<RoundRecord<PointModel>>&) {
        return std::vector<std::size_t>{round + 1};
      },
      [](RunRandomness&, const std::vector<RoundRecord<PointModel>>&) {
        return Verdict{true, std::nullopt};
      });
  auto amp = amplify(base, 3, Combiner::majority);
  CHECK(amp.rounds == 1);
  CHECK(amp.max_queries == 6);
  const auto t = run(amp, point_oracle(kVec), RoundBudget(1, 6), 9);
  REQUIRE(t.rounds_used() == 2);
  CHECK(t.per_round[0].queries == std::vector<std::size_t>{1, 1, 1});
  CHECK(t.per_round[1].queries == std::vector<std::size_t>{2, 2, 2});
  CHECK(t.verdict.accept);
}

TEST_CASE("majority of 101 copies of a 0.55 coin clears the exact binomial tail") {
  const double tail = binomial_tail_geq(101, 0.55, 51);
  CHECK(tail > 0.8);  // the amplified target must beat the required bound
  auto amp = amplify(coin_strategy(0.55), 101, Combiner::majority);
  InstanceSampler<PointModel> sampler = [](RandomStream&) { return point_oracle(kVec); };
  const auto est =
      estimate_acceptance(amp, sampler, RoundBudget(0, 101), 2000, 20260823);
  CHECK(std::fabs(est.probability - tail) <= est.half_width + 0.01);
  CHECK(est.probability >= 0.8 - est.half_width);
}

TEST_CASE("any_reject accepts only when every copy accepts") {
  const double bias = 0.8;
  auto amp = amplify(coin_strategy(bias), 4, Combiner::any_reject);
  InstanceSampler<PointModel> sampler = [](RandomStream&) { return point_oracle(kVec); };
  const auto est = estimate_acceptance(amp, sampler, RoundBudget(0, 4), 3000, 7);
  const double expect = bias * bias * bias * bias;  // 0.4096
  CHECK(std::fabs(est.probability - expect) <= est.half_width + 0.01);
}

TEST_CASE("repetition wrappers refuse tail strategies and zero copies") {
  auto tail = strategy_from_fns<PointModel>(
      0, 1, Adaptivity::tail_adaptive,
      [](std::size_t, RunRandomness&, const std::vector<RoundRecord<PointModel>>&) {
        return std::vector<std::size_t>{1};
      },
      [](RunRandomness&, const std::vector<RoundRecord<PointModel>>&) { return Verdict{}; });
  CHECK_THROWS_AS(amplify(tail, 3, Combiner::majority), UnsupportedStrategy);
  CHECK_THROWS_AS(amplify(coin_strategy(0.5), 0, Combiner::majority), UnsupportedStrategy);
}

TEST_CASE("acceptance estimates are deterministic with the documented half-width") {
  CHECK(hoeffding_half_width(100) == doctest::Approx(0.16276).epsilon(1e-3));
  InstanceSampler<PointModel> sampler = [](RandomStream& rng) {
    return point_oracle(FieldVector(5, {Elem(rng.below(5)), 0, 0, 0, 0}));
  };
  // Accept iff the sampled first coordinate is zero: probability exactly 1/5.
  auto s = strategy_from_fns<PointModel>(
      0, 1, Adaptivity::round_adaptive,
      [](std::size_t, RunRandomness&, const std::vector<RoundRecord<PointModel>>&) {
        return std::vector<std::size_t>{1};
      },
      [](RunRandomness&, const std::vector<RoundRecord<PointModel>>& hist) {
        return Verdict{hist[0].answers[0] == 0, std::nullopt};
      });
  const auto a = estimate_acceptance(s, sampler, RoundBudget(0, 1), 4000, 31);
  const auto b = estimate_acceptance(s, sampler, RoundBudget(0, 1), 4000, 31);
  CHECK(a.probability == b.probability);
  CHECK(a.accepted == b.accepted);
  CHECK(std::fabs(a.probability - 0.2) <= a.half_width);
}
