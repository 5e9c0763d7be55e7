#include "rlab/address.hpp"

#include <algorithm>
#include <bit>

namespace rlab {

namespace {

void require_address_shape(const FieldVector& x) {
  if (x.size() != x.p) {
    throw DimensionMismatch("pointer chase needs N = p coordinates");
  }
}

}  // namespace

PointerChain pointer_chain(const FieldVector& x, std::size_t k) {
  require_address_shape(x);
  if (k > kChainCap) throw EnumerationCapExceeded("chain length exceeds cap");
  PointerChain c;
  c.values.reserve(k + 1);
  c.coords.reserve(k + 1);
  std::size_t coord = 1;
  for (std::size_t j = 0; j <= k; ++j) {
    const Elem v = x.at1(coord);
    c.coords.push_back(coord);
    c.values.push_back(v);
    coord = static_cast<std::size_t>(v) + 1;
  }
  return c;
}

Elem address_bit(const FieldVector& x, std::size_t k) {
  return pointer_chain(x, k).final_value() % 2 == 0 ? 1 : 0;
}

Elem address_pair_bit(const FieldVector& x, std::size_t k) {
  if (k == 0) throw IndexOutOfRange("pair variant needs k >= 1");
  const std::size_t n = x.size();
  const std::size_t i = static_cast<std::size_t>(pointer_chain(x, k - 1).final_value()) + 1;
  return x.at1(i) == x.at1((i % n) + 1) ? 1 : 0;
}

Strategy<PointModel> address_bit_tester(std::uint32_t p, std::size_t k) {
  if (!is_prime(p)) throw NonPrimeN("field size must be prime");
  using Hist = CallbackRun<PointModel>::History;
  return strategy_from_fns<PointModel>(
      k, k + 1, Adaptivity::round_adaptive,
      [](std::size_t round, RunRandomness&, const Hist& h) -> std::vector<std::size_t> {
        if (round == 0) return {1};
        return {static_cast<std::size_t>(h[round - 1].answers.at(0)) + 1};
      },
      [](RunRandomness&, const Hist& h) -> Verdict {
        const Elem v = h.back().answers.at(0);
        return {v % 2 == 0, v};
      });
}

Strategy<PointModel> address_pair_tester(std::uint32_t p, std::size_t k) {
  if (!is_prime(p)) throw NonPrimeN("field size must be prime");
  if (k == 0) throw IndexOutOfRange("pair variant needs k >= 1");
  using Hist = CallbackRun<PointModel>::History;
  const std::size_t n = p;
  return strategy_from_fns<PointModel>(
      k, k + 2, Adaptivity::round_adaptive,
      [k, n](std::size_t round, RunRandomness&, const Hist& h) -> std::vector<std::size_t> {
        if (round == 0) return {1};
        const std::size_t i = static_cast<std::size_t>(h[round - 1].answers.at(0)) + 1;
        if (round < k) return {i};
        return {i, (i % n) + 1};  // final batch: the chased entry and its cyclic successor
      },
      [](RunRandomness&, const Hist& h) -> Verdict {
        const auto& last = h.back().answers;
        const bool eq = last.at(0) == last.at(1);
        return {eq, eq ? 1u : 0u};
      });
}

FunctionTable address_bit_table(std::uint32_t p, std::size_t k) {
  return build_table(p, p, [p, k](const std::vector<Elem>& x) {
    return address_bit(FieldVector(p, x), k);
  });
}

FunctionTable address_pair_table(std::uint32_t p, std::size_t k) {
  return build_table(p, p, [p, k](const std::vector<Elem>& x) {
    return address_pair_bit(FieldVector(p, x), k);
  });
}

namespace {

struct TableView {
  const FunctionTable* t;
  std::vector<std::size_t> stride;  // stride[j] extracts 0-based coordinate j

  explicit TableView(const FunctionTable& table) : t(&table) {
    stride.assign(table.N, 1);
    for (std::size_t j = table.N; j-- > 1;) stride[j - 1] = stride[j] * table.p;
  }

  Elem digit(std::size_t rank, std::size_t j) const {
    return static_cast<Elem>((rank / stride[j]) % t->p);
  }
};

std::vector<std::size_t> mask_coords(std::uint32_t mask) {
  std::vector<std::size_t> c;
  for (std::size_t j = 0; mask != 0; ++j, mask >>= 1) {
    if (mask & 1u) c.push_back(j);
  }
  return c;
}

// Is the table constant on every fiber of the coordinates in `coords`?
bool determines(const TableView& v, const std::vector<std::size_t>& coords) {
  const std::uint32_t p = v.t->p;
  std::size_t cells = 1;
  for (std::size_t i = 0; i < coords.size(); ++i) cells *= p;
  const Elem unseen = p;  // values are canonical residues < p
  std::vector<Elem> seen(cells, unseen);
  for (std::size_t rank = 0; rank < v.t->domain_size(); ++rank) {
    std::size_t key = 0;
    for (std::size_t j : coords) key = key * p + v.digit(rank, j);
    const Elem val = v.t->values[rank];
    if (seen[key] == unseen) {
      seen[key] = val;
    } else if (seen[key] != val) {
      return false;
    }
  }
  return true;
}

std::size_t min_nonadaptive(const TableView& v) {
  const std::uint32_t n = v.t->N;
  for (std::size_t size = 0; size <= n; ++size) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
      if (determines(v, mask_coords(mask))) return size;
    }
  }
  return n;  // unreachable: the full coordinate set always determines
}

// Exact two-batch search: first batch S0, then per answer tuple the smallest
// determining subset of the remaining coordinates on that fiber.
std::size_t min_one_round(const TableView& v) {
  const std::uint32_t p = v.t->p;
  const std::uint32_t n = v.t->N;
  std::size_t best = min_nonadaptive(v);  // a legal one-round strategy
  for (std::uint32_t s0 = 0; s0 < (1u << n); ++s0) {
    const auto first = mask_coords(s0);
    if (first.size() >= best) continue;
    std::size_t fibers = 1;
    for (std::size_t i = 0; i < first.size(); ++i) fibers *= p;
    std::vector<std::size_t> comp;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(s0 >> j & 1u)) comp.push_back(j);
    }
    // fiber_min[f] = smallest second batch that settles fiber f
    const std::size_t unknown = n + 1;
    std::vector<std::size_t> fiber_min(fibers, unknown);
    std::size_t unresolved = fibers;
    const Elem unseen = p;
    for (std::size_t tsize = 0; tsize <= comp.size() && unresolved > 0; ++tsize) {
      if (first.size() + tsize >= best) break;  // cannot improve on best
      for (std::uint64_t tm = 0; tm < (1ull << comp.size()) && unresolved > 0; ++tm) {
        if (static_cast<std::size_t>(std::popcount(tm)) != tsize) continue;
        std::vector<std::size_t> second;
        for (std::size_t i = 0; i < comp.size(); ++i) {
          if (tm >> i & 1u) second.push_back(comp[i]);
        }
        std::size_t subcells = 1;
        for (std::size_t i = 0; i < tsize; ++i) subcells *= p;
        std::vector<Elem> seen(fibers * subcells, unseen);
        std::vector<char> fiber_bad(fibers, 0);
        for (std::size_t rank = 0; rank < v.t->domain_size(); ++rank) {
          std::size_t f = 0;
          for (std::size_t j : first) f = f * p + v.digit(rank, j);
          if (fiber_min[f] != unknown || fiber_bad[f]) continue;
          std::size_t key = f * subcells;
          std::size_t sub = 0;
          for (std::size_t j : second) sub = sub * p + v.digit(rank, j);
          key += sub;
          const Elem val = v.t->values[rank];
          if (seen[key] == unseen) {
            seen[key] = val;
          } else if (seen[key] != val) {
            fiber_bad[f] = 1;
          }
        }
        for (std::size_t f = 0; f < fibers; ++f) {
          if (fiber_min[f] == unknown && !fiber_bad[f]) {
            fiber_min[f] = tsize;
            --unresolved;
          }
        }
      }
    }
    if (unresolved > 0) continue;  // pruned: this S0 cannot beat best
    const std::size_t worst_tail = *std::max_element(fiber_min.begin(), fiber_min.end());
    best = std::min(best, first.size() + worst_tail);
  }
  return best;
}

FunctionTable restrict_table(const TableView& v, std::size_t coord, Elem a) {
  FunctionTable out;
  out.p = v.t->p;
  out.N = v.t->N - 1;
  out.values.reserve(v.t->domain_size() / v.t->p);
  for (std::size_t rank = 0; rank < v.t->domain_size(); ++rank) {
    if (v.digit(rank, coord) == a) out.values.push_back(v.t->values[rank]);
  }
  return out;
}

std::size_t upper_bound_recursive(const FunctionTable& table, std::size_t rounds) {
  TableView v(table);
  std::size_t best = min_nonadaptive(v);
  if (rounds == 0 || best <= 1 || table.N == 0) return best;
  // single-coordinate opening batch, recurse on each fiber
  for (std::size_t c = 0; c < table.N; ++c) {
    std::size_t worst = 0;
    for (Elem a = 0; a < table.p; ++a) {
      worst = std::max(worst, upper_bound_recursive(restrict_table(v, c, a), rounds - 1));
    }
    best = std::min(best, 1 + worst);
  }
  return best;
}

}  // namespace

std::size_t min_worst_case_queries(const FunctionTable& table, std::size_t rounds, bool exact) {
  if (table.N > 20 || table.domain_size() > kEnumerationCap) {
    throw EnumerationCapExceeded("table too large for query search");
  }
  if (table.domain_size() != pow_checked(table.p, table.N, kEnumerationCap)) {
    throw DimensionMismatch("table length != p^N");
  }
  if (!exact) return upper_bound_recursive(table, rounds);
  TableView v(table);
  if (rounds == 0) return min_nonadaptive(v);
  if (rounds == 1) return min_one_round(v);
  throw UnsupportedStrategy("exact search supports at most one adaptive round");
}

}  // namespace rlab
