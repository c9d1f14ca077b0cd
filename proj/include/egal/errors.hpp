#pragma once

#include <stdexcept>
#include <string>

namespace egal {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (instance files, rational literals).
struct ParseError : Error {
  using Error::Error;
};

// Well-formed input that violates a model invariant (e.g. lower > peak).
struct ValidationError : Error {
  using Error::Error;
};

// One-sided problem with no feasible transfer vector.
struct InfeasibleInstance : Error {
  using Error::Error;
};

// Caller broke a documented precondition.
struct ContractViolation : Error {
  using Error::Error;
};

// Lorenz comparison of vectors with different totals.
struct UnequalTotals : Error {
  using Error::Error;
};

// Enumeration would exceed its candidate guard.
struct TooLarge : Error {
  using Error::Error;
};

// Attack search would exceed its evaluation budget.
struct BudgetExceeded : Error {
  using Error::Error;
};

// Random instance generation ran out of retries.
struct GenerationExhausted : Error {
  using Error::Error;
};

// Exact arithmetic left the 64-bit range. Results are never rounded;
// they either fit or this is thrown.
struct OverflowError : Error {
  using Error::Error;
};

// A structural invariant the algorithms rely on failed at runtime.
// Any occurrence is a bug in this library, not in the caller.
struct InvariantViolation : Error {
  using Error::Error;
};

inline void internal_check(bool ok, const char* what) {
  if (!ok) throw InvariantViolation(std::string("internal invariant violated: ") + what);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ContractViolation(what);
}

}  // namespace egal
