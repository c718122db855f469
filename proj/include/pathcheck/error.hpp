#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pathcheck {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Formula text did not conform to the grammar.
class ParseError : public Error {
public:
  ParseError(const std::string &msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Malformed or empty trace input.
class TraceError : public Error {
public:
  using Error::Error;
};

/// A proposition that the path does not declare.
class UnknownPropositionError : public Error {
public:
  explicit UnknownPropositionError(const std::string &name)
      : Error("unknown proposition '" + name + "'"), name_(name) {}

  const std::string &name() const noexcept { return name_; }

private:
  std::string name_;
};

/// Interface lengths that do not line up (composition, apply, builders).
class ArityError : public Error {
public:
  using Error::Error;
};

/// Structural precondition violated (cyclic circuit, non-PNF input, bad tree).
class StructureError : public Error {
public:
  using Error::Error;
};

} // namespace pathcheck
