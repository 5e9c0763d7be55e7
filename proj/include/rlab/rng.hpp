#pragma once

#include <cstdint>

namespace rlab {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer; good avalanche, cheap, and reproducible everywhere.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Derive an independent child seed from (seed, tag).  Used everywhere a master
// seed fans out into per-trial / per-copy / per-module streams, so that
// consumers never share or advance each other's state.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return mix64(mix64(seed + kGoldenGamma) + tag * kGoldenGamma + 1);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return derive_seed(derive_seed(seed, a), b);
}

// Counter-based splitmix64 stream.  Deterministic given the seed; never
// depends on platform distributions, so record streams are byte-stable.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Unbiased integer in [0, n) via rejection sampling.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t v = next();
      if (v >= threshold) return v % n;
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double prob) { return unit() < prob; }

 private:
  std::uint64_t state_;
};

// Per-run randomness handed to strategy callbacks.  `stream()` is the run's
// primary stream (advances as the strategy draws); `fork(tag)` and
// `child(tag)` derive independent generators purely from the run seed, so a
// wrapper strategy can hand stable sub-randomness to inner copies without
// disturbing the primary stream.
class RunRandomness {
 public:
  explicit RunRandomness(std::uint64_t run_seed)
      : run_seed_(run_seed), primary_(derive_seed(run_seed, 0)) {}

  std::uint64_t run_seed() const { return run_seed_; }
  RandomStream& stream() { return primary_; }

  RandomStream fork(std::uint64_t tag) const {
    return RandomStream(derive_seed(run_seed_, 1, tag));
  }

  RunRandomness child(std::uint64_t tag) const {
    return RunRandomness(derive_seed(run_seed_, 2, tag));
  }

 private:
  std::uint64_t run_seed_;
  RandomStream primary_;
};

}  // namespace rlab
