#pragma once

#include <stdexcept>
#include <string>

namespace branchcov {

// Maps onto the CLI exit codes: InvalidSpec -> 1, Numerical -> 2.
enum class ErrorKind { InvalidSpec, Numerical };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

class SpecError : public Error {
public:
  explicit SpecError(const std::string &what)
      : Error(ErrorKind::InvalidSpec, what) {}
};

class NumericalError : public Error {
public:
  explicit NumericalError(const std::string &what)
      : Error(ErrorKind::Numerical, what) {}
};

} // namespace branchcov
