#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwp {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation errors.
class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class TypeMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

// Syntax error with a 1-based source position and the set of tokens that
// would have been accepted there.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string found,
             std::vector<std::string> expected);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& found() const noexcept { return found_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string found_;
  std::vector<std::string> expected_;
};

// Well-formedness errors that are not syntactic: negative loop counts,
// probabilistic assignments without branches.
class StaticError : public Error {
 public:
  using Error::Error;
};

// Branch weights of a probabilistic assignment are negative or do not sum to 1.
class WeightError : public Error {
 public:
  using Error::Error;
};

// A quantum state violated the normalization invariant.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

}  // namespace pwp
