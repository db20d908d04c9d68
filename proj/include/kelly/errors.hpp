#ifndef KELLY_ERRORS_HPP
#define KELLY_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kelly {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition (bad probability, sigma <= 0, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Mismatched vector/distribution dimensions.
class DimensionError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Malformed input data; carries the 1-based line number of the offending row.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Gradient requested at or beyond the survival boundary 1 + k'x = 0.
class BoundaryError : public Error {
public:
  using Error::Error;
};

/// A wealth multiplier went negative; carries the offending step index.
class SurvivalError : public Error {
public:
  SurvivalError(const std::string& what, std::size_t step)
      : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
  std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

}  // namespace kelly

#endif
