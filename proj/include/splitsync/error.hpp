#ifndef SPLITSYNC_ERROR_HPP
#define SPLITSYNC_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace splitsync {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violations: mismatched state counts, out-of-range indices,
// nondeterministic input where a DFA is required, unsupported sizes.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A configured resource cap (split alphabet, choice functions, monoid size)
// would be exceeded. Results are never truncated silently.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, unsigned long long requested,
                 unsigned long long budget)
      : Error(what + " (needs " + std::to_string(requested) + ", budget " +
              std::to_string(budget) + ")"),
        requested_(requested),
        budget_(budget) {}

  unsigned long long requested() const { return requested_; }
  unsigned long long budget() const { return budget_; }

 private:
  unsigned long long requested_;
  unsigned long long budget_;
};

// Malformed automaton text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

// A named catalog entry or its backing data file is missing or fails
// verification.
class CatalogError : public Error {
 public:
  using Error::Error;
};

}  // namespace splitsync

#endif  // SPLITSYNC_ERROR_HPP
