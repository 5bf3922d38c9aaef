#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Words, automata or instances built over different alphabets were mixed.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A bounded search ran out of its node budget before answering.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::size_t nodes)
      : Error(what), nodes_(nodes) {}
  std::size_t nodes() const { return nodes_; }

 private:
  std::size_t nodes_;
};

/// Text input could not be parsed. `line` is 1-based (0 when not from a file),
/// `column` is the 0-based token index within the line or expression.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace pep
