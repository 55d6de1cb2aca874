// Error types thrown by the syncmmse core library.
#pragma once

#include <stdexcept>
#include <string>

namespace syncmmse {

// Base class for all library errors, so callers can map the whole family
// to one exit path.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A cyclic-spectrum callback violated its conjugate-pair symmetry, so the
// assembled matrix is not Hermitian within tolerance.
class ModelInconsistent : public Error {
 public:
  using Error::Error;
};

// An integrand evaluated to NaN or infinity at a quadrature node.
class NonFiniteIntegrand : public Error {
 public:
  using Error::Error;
};

// The Hermitian eigensolver did not converge.
class EigensolveFailure : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

// Time-domain kernels are only defined for the zero-delay model.
class UnsupportedDelay : public Error {
 public:
  using Error::Error;
};

// A Gram matrix that must be positive definite was not.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

// Pulse energy beyond the requested truncation length exceeds tolerance.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// Too few segments for a meaningful averaged periodogram.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

}  // namespace syncmmse
