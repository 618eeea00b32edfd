#pragma once

#include <stdexcept>
#include <string>

namespace mchain {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An interval refinement reached the configured maximum precision without
/// deciding a sign. Usually means a hidden rational relation in the input.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// Malformed number spec, polynomial, isolating interval, or CLI value.
class ParseError : public Error {
 public:
  using Error::Error;
};

class UnknownName : public Error {
 public:
  using Error::Error;
};

/// Arithmetic between elements of two different number fields.
class CrossFieldError : public Error {
 public:
  using Error::Error;
};

/// The coordinates {alpha_1, ..., alpha_n, 1} are linearly dependent over Q.
class DependentTarget : public Error {
 public:
  using Error::Error;
};

/// An observation that contradicts a caller assertion (exact tie between
/// non-proportional vectors, vanishing eliminants, ...).
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

class DimensionTooLarge : public Error {
 public:
  using Error::Error;
};

/// A theorem-guaranteed bound failed; indicates a bug.
class BoundViolated : public Error {
 public:
  using Error::Error;
};

/// No scanned lattice scale produced a basis within the requested bound.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

class DegenerateScalar : public Error {
 public:
  using Error::Error;
};

class NoRepetition : public Error {
 public:
  using Error::Error;
};

class ZeroBetaEll : public Error {
 public:
  using Error::Error;
};

}  // namespace mchain
