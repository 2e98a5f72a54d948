#pragma once

#include <stdexcept>
#include <string>

namespace fractb {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A state component became NaN or infinite during integration.
struct NonFiniteState : Error {
  using Error::Error;
};

// An iterative evaluation exceeded its term/iteration budget.
struct NoConvergence : Error {
  using Error::Error;
};

// The reproduction-number denominator is not positive for these parameters.
struct DegenerateDenominator : Error {
  using Error::Error;
};

// r0 <= 1: only the disease-free steady state exists.
struct NoEndemicEquilibrium : Error {
  using Error::Error;
};

// Two grid-indexed series do not share the same grid.
struct GridMismatch : Error {
  using Error::Error;
};

// Efficacy is undefined when the initial infectious count is zero.
struct ZeroInitialInfectious : Error {
  using Error::Error;
};

// Scenario file is syntactically malformed (message carries the line number).
struct ParseError : Error {
  using Error::Error;
};

// Scenario key (file or --set override) is not recognized.
struct UnknownKey : Error {
  using Error::Error;
};

// A domain invariant on parameters or configuration is violated.
struct InvariantViolation : Error {
  using Error::Error;
};

}  // namespace fractb
