#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mg {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input text could not be parsed. Positions are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
  }
  std::size_t line_;
  std::size_t column_;
};

/// A ball enumeration hit the vertex cap before completing.
class CapExceeded : public Error {
 public:
  CapExceeded(std::size_t cap, std::size_t partial_count)
      : Error("vertex cap " + std::to_string(cap) + " exceeded after discovering " +
              std::to_string(partial_count) + " vertices"),
        cap_(cap),
        partial_count_(partial_count) {}

  std::size_t cap() const { return cap_; }
  std::size_t partial_count() const { return partial_count_; }

 private:
  std::size_t cap_;
  std::size_t partial_count_;
};

/// The formula evaluator exhausted its evaluation budget.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(std::uint64_t budget)
      : Error("evaluation budget " + std::to_string(budget) + " exceeded") {}
};

/// An operation was called with arguments violating its stated precondition.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

}  // namespace mg
