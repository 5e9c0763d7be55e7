#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "rlab/errors.hpp"
#include "rlab/field.hpp"

namespace rlab {

using Vertex = std::uint32_t;

// The three oracle access modes.  A model fixes the query and answer types;
// strategies, transcripts and the runner are generic over the model.

// Coordinate probe: query a 1-based position, receive that entry.
struct PointModel {
  using Query = std::size_t;
  using Answer = Elem;
};

// Linear probe: query a coefficient vector L, receive <L, x> mod p.
struct LinearModel {
  using Query = std::vector<Elem>;
  using Answer = Elem;
};

// Neighborhood probe: query a vertex, receive its packed neighbor list.
struct GraphModel {
  using Query = Vertex;
  using Answer = std::vector<Vertex>;
};

// An oracle is a pure function of the query: same query, same answer, and
// answering never mutates the instance.
template <class M>
struct Oracle {
  std::function<typename M::Answer(const typename M::Query&)> answer;
};

inline Oracle<PointModel> point_oracle(FieldVector x) {
  return {[x = std::move(x)](const std::size_t& i) { return x.at1(i); }};
}

inline Oracle<LinearModel> linear_oracle(FieldVector x) {
  return {[x = std::move(x)](const std::vector<Elem>& coeff) -> Elem {
    if (coeff.size() != x.size()) throw DimensionMismatch("coefficient vector length != N");
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < coeff.size(); ++j) {
      acc += static_cast<std::uint64_t>(coeff[j]) * x.e[j];
    }
    return static_cast<Elem>(acc % x.p);
  }};
}

// Final outcome of a run: accept/reject, optionally with the computed field
// element for strategies that evaluate a function rather than test one.
struct Verdict {
  bool accept = false;
  std::optional<Elem> value;

  bool operator==(const Verdict&) const = default;
};

}  // namespace rlab
