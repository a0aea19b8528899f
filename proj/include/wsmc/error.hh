#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wsmc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line` and `column` are 1-based; 0 means unknown.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    std::string where;
    if (line != 0) where += "line " + std::to_string(line);
    if (column != 0) {
      if (!where.empty()) where += ", ";
      where += "column " + std::to_string(column);
    }
    return where.empty() ? message : where + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

class AlphabetMismatch : public Error {
 public:
  AlphabetMismatch() : Error("operands are defined over different alphabets") {}
};

class SignatureMismatch : public Error {
 public:
  SignatureMismatch() : Error("regions are typed against different model signatures") {}
};

/// A model does not satisfy a structural requirement of the requested query.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Term-level errors: unknown operators, arity, complement parity, unguarded binders.
class TermError : public Error {
 public:
  using Error::Error;
};

class UnknownVariable : public TermError {
 public:
  explicit UnknownVariable(const std::string& name)
      : TermError("unknown free variable " + name), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// The requested property is not effectively computable; no approximation is produced.
class NonEffectiveQuery : public Error {
 public:
  using Error::Error;
};

/// A temporal formula lies outside the supported CTL fragment.
class OutsideFragment : public Error {
 public:
  using Error::Error;
};

}  // namespace wsmc
