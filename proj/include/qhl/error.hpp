#ifndef QHL_ERROR_HPP
#define QHL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qhl {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// A sign query was made on a value outside the real subfield.
class NotReal : public Error {
 public:
  explicit NotReal(const std::string& what) : Error("value is not real: " + what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

class NonHermitian : public Error {
 public:
  explicit NonHermitian(const std::string& what) : Error("matrix is not Hermitian: " + what) {}
};

class NonConvergence : public Error {
 public:
  explicit NonConvergence(const std::string& what) : Error("no convergence: " + what) {}
};

class Overflow : public Error {
 public:
  explicit Overflow(const std::string& what) : Error("floating-point overflow: " + what) {}
};

/// Syntax errors in program or matrix sources. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t col)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col),
        message_(msg) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return col_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t col_;
  std::string message_;
};

}  // namespace qhl

#endif  // QHL_ERROR_HPP
