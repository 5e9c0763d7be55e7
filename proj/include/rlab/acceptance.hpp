#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rlab {

inline constexpr int kCriteria = 11;
inline constexpr std::uint64_t kDefaultSuiteSeed = 20260823;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Run one of the 11 release criteria (1-based) at its pinned scale and
// tolerance.  Deterministic in `seed`.
CriterionResult run_criterion(int id, std::uint64_t seed);

// Run every criterion in order, streaming one "[PASS]/[FAIL] <id> <name>:
// <detail>" line per criterion plus a final summary line.  Returns 0 iff all
// criteria passed.
int acceptance_main(std::ostream& os, std::uint64_t seed = kDefaultSuiteSeed);

}  // namespace rlab
