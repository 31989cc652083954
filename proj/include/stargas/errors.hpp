#pragma once

#include <stdexcept>
#include <string>

namespace stargas {

/// Input data violates a documented precondition or invariant.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation contract (e.g. non-vanishing endpoint data
/// passed to a boundary-quotient routine).
struct ContractViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Frozen-geometry admissibility lost: 1/2 <= eta' <= 3/2 failed, or the flow
/// map stopped being monotone. Carries the first offending time so drivers can
/// shrink the horizon.
struct GeometryError : std::runtime_error {
  GeometryError(const std::string& what, double t)
      : std::runtime_error(what), t_violation(t) {}
  double t_violation;
};

/// Inner linear solver failed (singular weighted mass matrix or a rejected
/// implicit step).
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Picard iteration failed to contract; carries a suggested smaller horizon.
struct DivergenceError : std::runtime_error {
  DivergenceError(const std::string& what, double suggested_T)
      : std::runtime_error(what), suggested_T(suggested_T) {}
  double suggested_T;
};

}  // namespace stargas
