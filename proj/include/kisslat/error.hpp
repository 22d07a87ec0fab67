#pragma once

#include <stdexcept>
#include <string>

namespace kisslat {

// Base for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (code, basis, GRS, lattice and field files).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of a function or violating a type invariant.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An enumeration/size guard was exceeded.
class GuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace kisslat
