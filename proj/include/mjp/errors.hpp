#ifndef MJP_ERRORS_HPP
#define MJP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mjp {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A documented precondition or internal invariant failed (e.g. a thinning
// bound below a realized rate, or a negative compensating intensity).
struct InvariantViolation : Error {
  using Error::Error;
};

// Argument outside the valid domain (e.g. evaluating a path outside [0,T]).
struct DomainError : Error {
  using Error::Error;
};

// Requested functionality that is deliberately not supported.
struct UnsupportedError : Error {
  using Error::Error;
};

// All filtered mass vanished at some epoch; the constraint set (envelope,
// observations, locks) is incompatible with the transition structure.
// Callers typically redraw auxiliary variables and retry.
struct InfeasibleFilter : Error {
  explicit InfeasibleFilter(int epoch_index)
      : Error("forward filter infeasible at epoch " +
              std::to_string(epoch_index)),
        epoch(epoch_index) {}
  int epoch;
};

// Estimated working-set size of a filtering pass exceeds the configured
// budget. Raised before allocation so callers can fall back or report.
struct MemoryBudgetExceeded : Error {
  using Error::Error;
};

// Malformed or inconsistent run configuration.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace mjp

#endif
