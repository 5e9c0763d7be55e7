#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

#include "rlab/strategy.hpp"

namespace rlab {

// Two-sided 99% Hoeffding half-width for an empirical mean of `trials`
// Bernoulli samples: sqrt(ln(2/0.01) / (2 * trials)).
inline double hoeffding_half_width(std::size_t trials, double delta = 0.01) {
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(trials)));
}

struct Estimate {
  double probability = 0.0;
  double half_width = 0.0;
  std::size_t trials = 0;
  std::size_t accepted = 0;
};

// Samples an oracle instance from its own stream.  The stream passed in is
// derived from (master seed, trial index), never shared across trials.
template <class M>
using InstanceSampler = std::function<Oracle<M>(RandomStream&)>;

// Estimate Pr[accept] of `strategy` over instances drawn by `sampler`.
// Trial t draws everything it needs from seeds derived from (seed, t), so
// trials are order-independent and could run concurrently without changing
// the result; the estimate is a plain count either way.
template <class M>
Estimate estimate_acceptance(const Strategy<M>& strategy, const InstanceSampler<M>& sampler,
                             const RoundBudget& budget, std::size_t trials, std::uint64_t seed) {
  std::size_t accepted = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, t);
    RandomStream instance_stream(derive_seed(trial_seed, 0));
    Oracle<M> oracle = sampler(instance_stream);
    Transcript<M> tr = run(strategy, oracle, budget, derive_seed(trial_seed, 1));
    if (tr.verdict.accept) ++accepted;
  }
  Estimate e;
  e.trials = trials;
  e.accepted = accepted;
  e.probability = trials == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(trials);
  e.half_width = trials == 0 ? 1.0 : hoeffding_half_width(trials);
  return e;
}

}  // namespace rlab
