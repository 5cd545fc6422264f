#pragma once

#include <stdexcept>
#include <string>

namespace csplearn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Instance violates a structural invariant (index out of range, duplicate
// index inside a tuple, arity mismatch, ...).
struct MalformedInstanceError : Error {
  using Error::Error;
};

struct ArityMismatchError : MalformedInstanceError {
  using MalformedInstanceError::MalformedInstanceError;
};

// An exhaustive oracle refused to run past its configured cap. Oracles are
// never silently approximated.
struct CapExceededError : Error {
  using Error::Error;
};

// Planted-instance generation gave up (degenerate predicate).
struct PlantingError : Error {
  using Error::Error;
};

// Bad numeric domain for an analytic bound (e.g. beta <= alpha).
struct DomainError : Error {
  using Error::Error;
};

// Text-format rejection; carries a 1-based line number.
struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_number(line) {}
  std::size_t line_number;
};

}  // namespace csplearn
