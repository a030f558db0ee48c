#pragma once

#include <stdexcept>
#include <string>

namespace catseye {

/// Failure category. The CLI maps each category onto a process exit code.
enum class ErrorKind {
  Config,  ///< malformed or inconsistent input
  Range,   ///< argument outside the documented domain of an operation
  Domain,  ///< parameters outside the regime the construction applies to
  Solver,  ///< an iterative method failed to converge
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what) : Error(ErrorKind::Range, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class SolverError : public Error {
 public:
  explicit SolverError(const std::string& what) : Error(ErrorKind::Solver, what) {}
};

}  // namespace catseye
