#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace decat {

/// Base for failures of a well-formed request: ill-posed substitutions,
/// unguarded equations, oversize inputs. The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonzeroConstantTerm : public DomainError {
 public:
  NonzeroConstantTerm()
      : DomainError("composition requires the inner series to have constant term 0") {}
};

class NotGuarded : public DomainError {
 public:
  explicit NotGuarded(std::size_t n)
      : DomainError("fixpoint equation does not determine coefficient " + std::to_string(n) +
                    " recursively"),
        index(n) {}
  std::size_t index;
};

class TruncationExceeded : public DomainError {
 public:
  TruncationExceeded(std::size_t n, std::size_t order)
      : DomainError("term " + std::to_string(n) + " requested beyond truncation order " +
                    std::to_string(order)) {}
};

class NegativeCoefficient : public DomainError {
 public:
  explicit NegativeCoefficient(std::size_t n)
      : DomainError("term " + std::to_string(n) +
                    " is negative; not the counting sequence of a stuff type"),
        index(n) {}
  std::size_t index;
};

class ZeroArgument : public DomainError {
 public:
  ZeroArgument() : DomainError("closed form is singular at x = 0") {}
};

class TooLarge : public DomainError {
 public:
  using DomainError::DomainError;
};

class GroupTooLarge : public DomainError {
 public:
  explicit GroupTooLarge(std::size_t cap)
      : DomainError("generated group exceeds " + std::to_string(cap) + " elements") {}
};

}  // namespace decat
