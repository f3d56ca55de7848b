#pragma once

#include <stdexcept>
#include <string>

namespace spcm {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Shapes of the operands do not line up.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// A scalar argument or hyperparameter is outside its admissible range.
class ParameterError : public Error {
public:
  using Error::Error;
};

/// A caller broke a stated input contract (e.g. passed an asymmetric matrix
/// where a symmetric one is required).
class ContractError : public Error {
public:
  using Error::Error;
};

/// A factorization found the matrix singular / not positive definite.
class SingularityError : public Error {
public:
  using Error::Error;
};

/// The Sylvester system has no unique solution (an eigenvalue of A is the
/// negative of an eigenvalue of B).
class NonUniqueSolutionError : public Error {
public:
  using Error::Error;
};

/// Hyperparameter combination produced an indefinite system; the message
/// suggests how to reconfigure.
class ConfigurationError : public Error {
public:
  using Error::Error;
};

/// Training produced a non-finite objective.
class DivergenceError : public Error {
public:
  using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
public:
  using Error::Error;
};

/// A file opened fine but its contents are malformed; message carries the
/// offending line or offset.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Evaluation was requested without the class labels it needs.
class LabelError : public Error {
public:
  using Error::Error;
};

} // namespace spcm
