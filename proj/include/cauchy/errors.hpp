#pragma once

#include <stdexcept>
#include <string>

namespace cauchy {

// Invalid input: out-of-domain arguments, malformed literals, bad files.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// The sample carries too little information for the requested estimate
// (a point mass, or fewer distinct values than the procedure needs).
class DegenerateSampleError : public DomainError {
public:
  using DomainError::DomainError;
};

// A numerical procedure failed: quadrature did not reach its tolerance,
// an iteration did not converge, a ratio had a vanishing denominator.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace cauchy
