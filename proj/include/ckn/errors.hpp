#pragma once

#include <stdexcept>
#include <string>

namespace ckn {

// Parameter triple fails the admissibility constraints.
struct InadmissibleParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// b = 1 + a makes the exponent p collapse to 2.
struct DegenerateExponent : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Jet operands disagree in dimension or truncation order, or a partial
// of higher degree than the stored order was requested.
struct OrderMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

// Composition (log, reciprocal, fractional power) evaluated outside its domain.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A field that must be positive at the sample point is not.
struct NonPositiveField : std::domain_error {
  using std::domain_error::domain_error;
};

// Operation requires a profile normalized to unit source constant.
struct UnnormalizedSpec : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A quantity expected to be constant across sample points varies too much.
struct SpreadTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Moment exponent outside the admissible range [0, n/2 + 1].
struct QOutOfRange : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The quotient is undefined on an identically zero (or negative-mass) field.
struct ZeroField : std::domain_error {
  using std::domain_error::domain_error;
};

// Shooting method found no decaying profile in the bracketing interval.
struct NoDecayFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iteration failed to reach its convergence criterion.
struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ckn
