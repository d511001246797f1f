#pragma once

#include <stdexcept>
#include <string>

namespace levyembed {

/// Argument outside the domain an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iteration or series that failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation not available for this model or measure.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Target measure fails the admissibility criterion of the requested
/// construction. Carries both sides of the balance check for reporting.
class InadmissibleError : public std::runtime_error {
 public:
  InadmissibleError(const std::string& what, double lhs, double rhs)
      : std::runtime_error(what), lhs_(lhs), rhs_(rhs) {}

  double lhs() const noexcept { return lhs_; }
  double rhs() const noexcept { return rhs_; }

 private:
  double lhs_;
  double rhs_;
};

}  // namespace levyembed
