#pragma once

#include <stdexcept>
#include <string>

namespace randassign {

/// Malformed input: out-of-range index, size mismatch, non-permutation, ...
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Well-formed input that violates the precondition an algorithm relies on
/// (e.g. a non-SD-EF matrix handed to a decomposer that needs SD-EF).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Enumeration caps exceeded (n! permutations, (n!)^n profiles).
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Text-format parse failure with a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace randassign
