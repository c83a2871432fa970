#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vbpbb {

/// Bad argument or malformed input value (zero population, even window, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The series is too short for the requested operation.
class InsufficientData : public std::runtime_error {
 public:
  InsufficientData(const std::string& what, std::size_t required)
      : std::runtime_error(what + " (requires n >= " + std::to_string(required) + ")"),
        required_(required) {}

  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t required_;
};

/// Unreadable or malformed data file. Carries a 1-based line and column.
class DataError : public std::runtime_error {
 public:
  DataError(const std::string& source, std::size_t line, std::size_t column,
            const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                           ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace vbpbb
