#include "rlab/field.hpp"

namespace rlab {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::size_t pow_checked(std::uint32_t p, std::uint32_t n, std::size_t cap) {
  std::size_t r = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (r > cap / p) throw EnumerationCapExceeded("p^N exceeds enumeration cap");
    r *= p;
  }
  if (r > cap) throw EnumerationCapExceeded("p^N exceeds enumeration cap");
  return r;
}

FieldVector::FieldVector(std::uint32_t p_, std::vector<Elem> entries)
    : p(p_), e(std::move(entries)) {
  if (!is_prime(p)) throw NonPrimeN("field size must be prime");
  for (Elem v : e) {
    if (v >= p) throw IndexOutOfRange("entry not a canonical residue mod p");
  }
}

std::size_t vec_rank(const std::vector<Elem>& x, std::uint32_t p) {
  std::size_t r = 0;
  for (Elem v : x) {
    if (v >= p) throw IndexOutOfRange("digit not a canonical residue mod p");
    r = r * p + v;
  }
  return r;
}

std::vector<Elem> vec_unrank(std::size_t rank, std::uint32_t p, std::uint32_t n) {
  std::vector<Elem> x(n, 0);
  for (std::size_t j = n; j-- > 0;) {
    x[j] = static_cast<Elem>(rank % p);
    rank /= p;
  }
  if (rank != 0) throw IndexOutOfRange("rank outside p^N domain");
  return x;
}

}  // namespace rlab
