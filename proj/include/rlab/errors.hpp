#pragma once

#include <stdexcept>
#include <string>

namespace rlab {

// Base class for every failure this library reports deliberately.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A run tried to use more rounds or more total queries than its budget allows.
struct BudgetExceeded : Error {
  using Error::Error;
};

// A tail-restricted run emitted a multi-query batch after the opening batch.
struct QueryShapeViolation : Error {
  using Error::Error;
};

// Operation asked for on a strategy kind that does not support it.
struct UnsupportedStrategy : Error {
  using Error::Error;
};

// Vector/matrix shape disagreement.
struct DimensionMismatch : Error {
  using Error::Error;
};

// 1-based coordinate or row index outside the valid range.
struct IndexOutOfRange : Error {
  using Error::Error;
};

// Exhaustive search domain larger than the configured cap.
struct EnumerationCapExceeded : Error {
  using Error::Error;
};

// Materialized tree would exceed the configured size cap.
struct SizeCapExceeded : Error {
  using Error::Error;
};

// Reachable answer space of a strategy exceeds the materialization cap.
struct CapExceeded : Error {
  using Error::Error;
};

// The label pool backing the fresh-answer sampler ran dry.
struct PoolExhausted : Error {
  using Error::Error;
};

// A parameter that must be an (odd) prime is not.
struct NonPrimeN : Error {
  using Error::Error;
};

// Input pair violates a promised precondition (e.g. set weights).
struct PromiseViolation : Error {
  using Error::Error;
};

}  // namespace rlab
