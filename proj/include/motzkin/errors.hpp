#pragma once

#include <stdexcept>
#include <string>

namespace motzkin {

/// Argument outside the mathematical domain of an operation (t <= 0, p+q > n, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Request exceeds a documented size cap (enumeration length, dense solve size).
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Iterative eigensolver failed to reach its tolerance.
class SolverError : public std::runtime_error {
public:
  SolverError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

private:
  double residual_;
  int iterations_;
};

}  // namespace motzkin
