#pragma once

#include <stdexcept>
#include <string>

namespace robustprec {

// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad caller input: wrong sizes, non-finite values, invalid parameters.
struct InvalidInput : Error {
  using Error::Error;
};

// Symmetric eigensolver did not converge (should not happen for finite
// symmetric input; treated as fatal).
struct EigenFailure : Error {
  using Error::Error;
};

// Cholesky or related factorization failed.
struct FactorizationFailure : Error {
  using Error::Error;
};

// A matrix required to be positive definite was not.
struct NotPD : Error {
  using Error::Error;
};

// A principal direction has zero robust scale.
struct DegenerateDirection : Error {
  using Error::Error;
};

// Too few rows survived outlier screening to form a covariance estimate.
struct TooFewSurvivors : Error {
  using Error::Error;
};

}  // namespace robustprec
