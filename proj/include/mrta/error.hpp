#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mrta {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A picking task that no robot in the fleet can ever carry.
class InfeasibleTaskError : public Error {
 public:
  explicit InfeasibleTaskError(std::uint32_t task_id)
      : Error("infeasible task: t" + std::to_string(task_id) +
              " exceeds the capacity of every robot"),
        task_id_(task_id) {}

  std::uint32_t task_id() const noexcept { return task_id_; }

 private:
  std::uint32_t task_id_;
};

/// Malformed instance, solution or catalog text. Line and column are 1-based;
/// zero means "not tied to a position" (semantic errors).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(format(line, column, message)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(std::size_t line, std::size_t column,
                            const std::string& message) {
    if (line == 0) return message;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace mrta
