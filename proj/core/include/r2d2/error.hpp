#pragma once

#include <stdexcept>
#include <string>

namespace r2d2 {

/// Broad failure classes; the CLI maps them onto exit codes 1, 2 and 3.
enum class ErrorKind { InvalidArgument, Data, Numerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Precondition violated by a caller-supplied argument.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorKind::InvalidArgument, what) {}
};

/// Malformed or inconsistent input data (files, dimensions, lengths).
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

/// Non-finite values, degenerate operators, failed convergence.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

void require(bool condition, const std::string& message);
void require_data(bool condition, const std::string& message);

}  // namespace r2d2
