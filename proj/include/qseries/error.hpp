#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qseries {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two series from different coefficient rings were combined.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

// Inversion of a series whose constant term is not a unit.
class NonUnit : public Error {
 public:
  using Error::Error;
};

// A ½-weighted bilateral sum did not produce integer coefficients.
class NonIntegral : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A computation needed more coefficients than the configured depth allows.
class OrderTooSmall : public Error {
 public:
  OrderTooSmall(std::size_t needed, std::size_t had)
      : Error("order too small: needed " + std::to_string(needed) + ", had " +
              std::to_string(had)),
        needed_(needed),
        had_(had) {}

  std::size_t needed() const noexcept { return needed_; }
  std::size_t had() const noexcept { return had_; }

 private:
  std::size_t needed_;
  std::size_t had_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// Manifest or claim configuration is inconsistent (bad prime list, duplicate id, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qseries
