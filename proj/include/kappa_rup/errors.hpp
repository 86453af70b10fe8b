#pragma once

#include <stdexcept>
#include <string>

namespace kappa_rup {

/// An argument lies outside the domain where the quantity is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A requested integral or moment does not exist for the given state.
class DivergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An iterative solver stopped without meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace kappa_rup
