#pragma once

#include <stdexcept>
#include <string>

namespace isospec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument lies outside the family's natural domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid family parameters or index.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Base for failures of the numerical machinery itself.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonFiniteError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The denominator γ - ∫ crosses (or approaches) zero although γ passed the
/// printed admissibility rule.
class DenominatorVanishes : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InadmissibleGamma : public Error {
 public:
  using Error::Error;
};

/// Operator index outside its definition range (e.g. lowering at n = 0).
class IndexError : public Error {
 public:
  using Error::Error;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

}  // namespace isospec
