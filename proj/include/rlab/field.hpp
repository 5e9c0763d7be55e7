#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rlab/errors.hpp"

namespace rlab {

// Canonical residue in {0, ..., p-1}.
using Elem = std::uint32_t;

bool is_prime(std::uint64_t n);

inline Elem mod_add(Elem a, Elem b, std::uint32_t p) { return (a + b) % p; }
inline Elem mod_sub(Elem a, Elem b, std::uint32_t p) { return (a + p - b % p) % p; }
inline Elem mod_mul(Elem a, Elem b, std::uint32_t p) {
  return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p);
}

// p^n with an overflow/cap guard.  Throws EnumerationCapExceeded beyond cap.
std::size_t pow_checked(std::uint32_t p, std::uint32_t n, std::size_t cap);

// Domains we enumerate exhaustively (function tables, codeword lists, fiber
// scans) must stay desk-sized.
inline constexpr std::size_t kEnumerationCap = 1u << 20;

// Vector over F_p.  Storage is 0-based; coordinates are addressed 1-based to
// match how query positions are written everywhere else.
struct FieldVector {
  std::uint32_t p = 2;
  std::vector<Elem> e;

  FieldVector() = default;
  FieldVector(std::uint32_t p_, std::vector<Elem> entries);

  std::size_t size() const { return e.size(); }

  Elem at1(std::size_t i) const {
    if (i < 1 || i > e.size()) throw IndexOutOfRange("coordinate out of range");
    return e[i - 1];
  }

  bool operator==(const FieldVector&) const = default;
};

// Lexicographic rank of a tuple (x_1, ..., x_N): x_1 is the most significant
// digit.  rank = sum x_j * p^(N-j), so rank order equals lexicographic order.
std::size_t vec_rank(const std::vector<Elem>& x, std::uint32_t p);
std::vector<Elem> vec_unrank(std::size_t rank, std::uint32_t p, std::uint32_t n);

// Explicit table of a function F_p^N -> F_p, values listed in lexicographic
// input order (rank order above).
struct FunctionTable {
  std::uint32_t p = 2;
  std::uint32_t N = 1;
  std::vector<Elem> values;

  std::size_t domain_size() const { return values.size(); }
  Elem value_at(std::size_t rank) const { return values.at(rank); }

  bool operator==(const FunctionTable&) const = default;
};

// Materialize fn over all of F_p^N (lexicographic order).
template <class Fn>
FunctionTable build_table(std::uint32_t p, std::uint32_t n, Fn&& fn) {
  const std::size_t total = pow_checked(p, n, kEnumerationCap);
  FunctionTable t;
  t.p = p;
  t.N = n;
  t.values.reserve(total);
  std::vector<Elem> x(n, 0);
  for (std::size_t r = 0; r < total; ++r) {
    t.values.push_back(fn(x));
    // odometer increment, last coordinate fastest
    for (std::size_t j = n; j-- > 0;) {
      if (++x[j] < p) break;
      x[j] = 0;
    }
  }
  return t;
}

}  // namespace rlab
