#pragma once

#include <stdexcept>
#include <string>

namespace bifinsler {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands belong to different algebras.
class SpecMismatch : public Error {
 public:
  using Error::Error;
};

/// A matrix violates the invariants of the algebra it is declared in.
class InvalidElement : public Error {
 public:
  using Error::Error;
};

/// A group element is outside the principal-logarithm chart.
class BranchBoundary : public Error {
 public:
  using Error::Error;
};

class NotUnitary : public Error {
 public:
  using Error::Error;
};

/// Operation needs a nonzero vector.
class ZeroVector : public Error {
 public:
  using Error::Error;
};

/// Scale guard of the truncated expansions was violated.
class RangeError : public Error {
 public:
  using Error::Error;
};

class DegeneratePair : public Error {
 public:
  using Error::Error;
};

class DegeneratePlane : public Error {
 public:
  using Error::Error;
};

/// A limit extrapolation did not settle.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

class NotCommuting : public Error {
 public:
  using Error::Error;
};

/// A proven implication failed numerically. Signals a tolerance or
/// implementation bug, never a legitimate verdict.
class InconsistentTheorem : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (specs, files, flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace bifinsler
