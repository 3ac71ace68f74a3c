#pragma once

#include <stdexcept>
#include <string>

namespace wmop {

/// Malformed arguments: dimension mismatch, weights off the simplex, bad index sets.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A mathematical hypothesis of the requested operation does not hold
/// (e.g. a fixed point requested with some lambda_i = 0).
class PreconditionError : public std::domain_error {
 public:
  explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

/// Internal result failed its own post-check (e.g. a claimed fixed point is not one).
class ConsistencyError : public std::runtime_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

/// File could not be read, written or parsed. `line` is 1-based, 0 when not applicable.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace wmop
