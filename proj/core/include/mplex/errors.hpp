#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mplex {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (dimension mismatch, empty network).
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A layer with no active node was handed to an operation that needs one.
class EmptyLayerError : public InputError {
 public:
  using InputError::InputError;
};

/// A numeric argument is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure inside the reconstruction loop.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// The solver was asked to run on input it is not defined for.
class PreconditionError : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace mplex
