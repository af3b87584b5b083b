#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stsb {

/// Malformed input that cannot be tokenized into records.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input whose values violate a documented precondition.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs that should describe the same rows but do not line up.
class AlignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Correlation requested on a variable with no spread.
class UndefinedCorrelationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Bad command line or configuration.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stsb
