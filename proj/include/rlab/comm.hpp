#pragma once

#include <cstdint>
#include <vector>

#include "rlab/field.hpp"
#include "rlab/strategy.hpp"

namespace rlab {

// Bipartite pointer structure: Alice holds a map from her h vertices into
// Bob's, Bob holds the reverse.  Global labels: Alice 0..h-1, Bob h..2h-1;
// the walk starts at Alice's vertex 0.
struct PointerInstance {
  std::size_t half = 1;
  std::vector<std::uint32_t> to_b;  // Alice's map, values in [0, half)
  std::vector<std::uint32_t> to_a;  // Bob's map, values in [0, half)

  std::size_t vertices() const { return 2 * half; }
};

PointerInstance random_instance(std::size_t half, RandomStream& rng);

// Label after k steps of the merged map from the start vertex, k >= 1.
std::uint32_t chase(const PointerInstance& inst, std::size_t k);

// Pack the instance into F_n with coordinate label+1 holding the label of the
// vertex pointed to; coordinates beyond 2h pad with 0 (unreachable vertices).
// n must be an odd prime >= 2h.
FieldVector embed_instance(const PointerInstance& inst, std::uint32_t n);

enum class Speaker { alice, bob };

struct ProtocolMessage {
  Speaker sender = Speaker::bob;
  std::size_t bits = 0;
};

struct ProtocolRun {
  std::vector<ProtocolMessage> messages;
  Verdict output;                      // the broadcast accept bit (no value)
  Transcript<LinearModel> transcript;  // the strategy run the protocol simulated

  std::size_t rounds() const { return messages.size(); }
  std::size_t total_bits() const {
    std::size_t n = 0;
    for (const auto& m : messages) n += m.bits;
    return n;
  }
};

// Single-query-per-batch chase over a linear oracle: batch j queries the
// indicator of coordinate g_j + 1 where g_0 = 0 and g_{j+1} is the answer to
// batch j.  After `steps` batches the verdict value is the final label and the
// run accepts iff that label is even.  Uses steps - 1 adaptive rounds.
Strategy<LinearModel> chase_strategy(std::uint32_t n, std::size_t steps);

// Compile one run of a linear-query strategy on the embedded instance into an
// alternating two-party protocol.  Bob speaks first; message j carries the
// sender's share of the batch-(j-1) partial sums plus the relayed full
// answers of batch j-2, and a final broadcast carries the verdict.  Total
// messages come to (adaptive rounds of the strategy) + 2, and total bits stay
// within (2q+2) * ceil(log2 n) for q total queries.  The output always equals
// the verdict of running the strategy directly on the embedded vector with
// the same seed.
ProtocolRun compile_to_protocol(const Strategy<LinearModel>& strategy,
                                const PointerInstance& inst, std::uint32_t n,
                                std::uint64_t seed);

std::size_t bits_per_element(std::uint32_t n);

// Intersection-parity oracle for promise pairs: given x, y as n-bit masks of
// weight m each, queries z answer <x xor y, z> mod 2.  The underlying parity
// has support size exactly 2m - 2|intersection|.  Each query is answerable
// with a single exchanged bit (each side sends its own share's parity).
struct XorParityOracle {
  std::uint32_t n = 0;
  std::uint64_t x = 0;
  std::uint64_t y = 0;

  std::uint64_t support_mask() const { return x ^ y; }
  std::size_t support_size() const;
  Elem query(std::uint64_t z) const;

  struct SplitAnswer {
    Elem alice_bit = 0;  // parity of x & z, computed by Alice alone
    Elem bob_bit = 0;    // parity of y & z, computed by Bob alone
    std::size_t bits_exchanged = 1;
    Elem combined() const { return alice_bit ^ bob_bit; }
  };
  SplitAnswer query_split(std::uint64_t z) const;
};

XorParityOracle xor_parity_oracle(std::uint64_t x, std::uint64_t y, std::uint32_t n,
                                  std::size_t m);

}  // namespace rlab
