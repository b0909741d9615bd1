#pragma once

#include <stdexcept>
#include <string>

namespace circlechain {

/// Input rejected before any computation: non-finite values, mismatched
/// truncation orders, malformed configuration.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation requested outside the open unit disk.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quadrature could not meet its tolerance, or the integrand is not integrable.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotIntegrableError : public QuadratureError {
 public:
  using QuadratureError::QuadratureError;
};

/// A singular point could not be classified within the configured bounds.
class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace circlechain
