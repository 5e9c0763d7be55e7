#include "rlab/comm.hpp"

#include <bit>
#include <string>

namespace rlab {

namespace {

void check_instance(const PointerInstance& inst) {
  if (inst.half == 0) throw DimensionMismatch("instance needs at least one vertex per side");
  if (inst.to_b.size() != inst.half || inst.to_a.size() != inst.half) {
    throw DimensionMismatch("pointer maps must cover each side exactly");
  }
  for (auto v : inst.to_b) {
    if (v >= inst.half) throw IndexOutOfRange("pointer target out of range");
  }
  for (auto v : inst.to_a) {
    if (v >= inst.half) throw IndexOutOfRange("pointer target out of range");
  }
}

}  // namespace

PointerInstance random_instance(std::size_t half, RandomStream& rng) {
  if (half == 0) throw DimensionMismatch("instance needs at least one vertex per side");
  PointerInstance inst;
  inst.half = half;
  inst.to_b.reserve(half);
  inst.to_a.reserve(half);
  for (std::size_t i = 0; i < half; ++i) {
    inst.to_b.push_back(static_cast<std::uint32_t>(rng.below(half)));
  }
  for (std::size_t i = 0; i < half; ++i) {
    inst.to_a.push_back(static_cast<std::uint32_t>(rng.below(half)));
  }
  return inst;
}

std::uint32_t chase(const PointerInstance& inst, std::size_t k) {
  check_instance(inst);
  const std::uint32_t h = static_cast<std::uint32_t>(inst.half);
  std::uint32_t cur = 0;
  for (std::size_t step = 0; step < k; ++step) {
    cur = (cur < h) ? h + inst.to_b[cur] : inst.to_a[cur - h];
  }
  return cur;
}

FieldVector embed_instance(const PointerInstance& inst, std::uint32_t n) {
  check_instance(inst);
  if (n == 2 || !is_prime(n)) throw NonPrimeN("embedding modulus must be an odd prime");
  if (n < 2 * inst.half) throw DimensionMismatch("modulus too small to label both sides");
  const std::uint32_t h = static_cast<std::uint32_t>(inst.half);
  std::vector<Elem> values(n, 0);
  for (std::uint32_t a = 0; a < h; ++a) values[a] = h + inst.to_b[a];
  for (std::uint32_t b = 0; b < h; ++b) values[h + b] = inst.to_a[b];
  return FieldVector(n, std::move(values));
}

std::size_t bits_per_element(std::uint32_t n) {
  if (n < 2) return 1;
  return std::bit_width(n - 1u);
}

Strategy<LinearModel> chase_strategy(std::uint32_t n, std::size_t steps) {
  if (steps == 0) throw BudgetExceeded("chase needs at least one step");
  return strategy_from_fns<LinearModel>(
      steps - 1, steps, Adaptivity::round_adaptive,
      [n](std::size_t round, RunRandomness&,
          const std::vector<RoundRecord<LinearModel>>& hist) {
        const Elem g = (round == 0) ? 0 : hist[round - 1].answers.at(0);
        if (g >= n) throw IndexOutOfRange("chase left the labeled range");
        std::vector<Elem> coeff(n, 0);
        coeff[g] = 1;
        return std::vector<std::vector<Elem>>{std::move(coeff)};
      },
      [](RunRandomness&, const std::vector<RoundRecord<LinearModel>>& hist) {
        const Elem last = hist.back().answers.at(0);
        return Verdict{last % 2 == 0, last};
      });
}

ProtocolRun compile_to_protocol(const Strategy<LinearModel>& strategy,
                                const PointerInstance& inst, std::uint32_t n,
                                std::uint64_t seed) {
  const FieldVector x = embed_instance(inst, n);
  const std::size_t h = inst.half;
  const std::size_t b = bits_per_element(n);

  RunRandomness rand(seed);
  auto sr = strategy.start();

  ProtocolRun out;
  out.transcript.seed = seed;
  std::size_t relayed = 0;  // answers of the previous batch ride on the next message
  for (std::size_t round = 0; round <= strategy.rounds; ++round) {
    auto queries = sr->next_queries(round, rand);
    std::vector<Elem> answers;
    answers.reserve(queries.size());
    for (const auto& coeff : queries) {
      if (coeff.size() != x.size()) {
        throw DimensionMismatch("coefficient vector length != embedded size");
      }
      // Each side sums its own coordinates; the pad beyond 2h is zero, so the
      // two shares reconstruct the full inner product.
      std::uint64_t alice = 0, bob = 0, full = 0;
      for (std::size_t pos = 1; pos <= h; ++pos) {
        alice += static_cast<std::uint64_t>(coeff[pos - 1]) * x.at1(pos);
      }
      for (std::size_t pos = h + 1; pos <= 2 * h; ++pos) {
        bob += static_cast<std::uint64_t>(coeff[pos - 1]) * x.at1(pos);
      }
      for (std::size_t pos = 1; pos <= x.size(); ++pos) {
        full += static_cast<std::uint64_t>(coeff[pos - 1]) * x.at1(pos);
      }
      if ((alice + bob) % n != full % n) {
        throw Error("shares failed to reconstruct the oracle answer");
      }
      answers.push_back(static_cast<Elem>(full % n));
    }
    ProtocolMessage msg;
    msg.sender = (out.messages.size() % 2 == 0) ? Speaker::bob : Speaker::alice;
    msg.bits = (queries.size() + relayed) * b;
    out.messages.push_back(msg);
    relayed = answers.size();
    sr->observe(round, answers);
    out.transcript.per_round.push_back({std::move(queries), std::move(answers)});
  }
  out.transcript.verdict = sr->finalize(rand);
  ProtocolMessage verdict_msg;
  verdict_msg.sender = (out.messages.size() % 2 == 0) ? Speaker::bob : Speaker::alice;
  verdict_msg.bits = 1;
  out.messages.push_back(verdict_msg);
  out.output = Verdict{out.transcript.verdict.accept, std::nullopt};
  return out;
}

std::size_t XorParityOracle::support_size() const {
  return static_cast<std::size_t>(std::popcount(support_mask()));
}

Elem XorParityOracle::query(std::uint64_t z) const {
  return static_cast<Elem>(std::popcount(support_mask() & z) & 1);
}

XorParityOracle::SplitAnswer XorParityOracle::query_split(std::uint64_t z) const {
  SplitAnswer a;
  a.alice_bit = static_cast<Elem>(std::popcount(x & z) & 1);
  a.bob_bit = static_cast<Elem>(std::popcount(y & z) & 1);
  return a;
}

XorParityOracle xor_parity_oracle(std::uint64_t x, std::uint64_t y, std::uint32_t n,
                                  std::size_t m) {
  if (n == 0 || n > 64) throw DimensionMismatch("ground set size must be in [1, 64]");
  const std::uint64_t universe = (n == 64) ? ~0ull : ((1ull << n) - 1);
  if ((x & ~universe) || (y & ~universe)) {
    throw IndexOutOfRange("set element outside the ground set");
  }
  if (static_cast<std::size_t>(std::popcount(x)) != m ||
      static_cast<std::size_t>(std::popcount(y)) != m) {
    throw PromiseViolation("each side must hold exactly m elements");
  }
  return XorParityOracle{n, x, y};
}

}  // namespace rlab
