#pragma once

#include <stdexcept>
#include <string>

namespace nled {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Lagrangian evaluated outside its domain (e.g. 1 + F - G^2 <= 0 for Born-Infeld),
// or a unit system with non-positive constants.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Degenerate geometric construction: zero direction, p parallel to d, p = d^2 pole.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// Invalid argument that is not a physics-domain violation (negative step order, bad range).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Root search failed (no bracketed root, non-finite residuals).
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace nled
