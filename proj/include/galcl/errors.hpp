#pragma once
/*
 * Error taxonomy for the galcl library.
 *
 * Every failure mode carries a dedicated type so callers (and the CLI)
 * can map it to a distinct diagnostic and exit code.
 */

#include <stdexcept>
#include <string>

namespace galcl {

// Base class of every library error.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument to an operation: non-finite input, dimension mismatch,
// parameter out of its admissible range.
struct DomainViolation : Error {
  using Error::Error;
};

// A state lies outside the open convex cone of its system. The message
// names the violated inequality.
struct ConeViolation : DomainViolation {
  using DomainViolation::DomainViolation;
};

// A point lies outside the domain of a rest-frame entropy closure.
struct ClosureDomainError : DomainViolation {
  using DomainViolation::DomainViolation;
};

// A closure-derived denominator vanished (flat gradient where a pressure
// formula divides by it).
struct DegenerateClosure : Error {
  using Error::Error;
};

// A conjugate solve was asked for slopes outside the range of the
// closure gradient.
struct NoSolution : Error {
  using Error::Error;
};

// A Newton step encountered a numerically singular Hessian.
struct SingularHessian : Error {
  using Error::Error;
};

// Characteristic analysis produced complex eigenvalues beyond tolerance.
struct HyperbolicityViolation : Error {
  using Error::Error;
};

// An operation on an elliptic-generator system left the principal branch
// on which the velocity is additive under boosts.
struct BranchViolation : Error {
  using Error::Error;
};

// A finite-difference stencil could not be kept inside the cone even
// after shrinking the step.
struct FiniteDifferenceFailure : Error {
  using Error::Error;
};

// The time integrator had to abandon a run (cone exit, dt underflow).
// Carries the offending cell and step for diagnostics.
struct SolverAbort : Error {
  int cell;
  long step;
  SolverAbort(const std::string& msg, int cell_, long step_)
      : Error(msg), cell(cell_), step(step_) {}
};

// Malformed run configuration (CLI / config file).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace galcl
