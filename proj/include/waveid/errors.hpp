#pragma once

#include <stdexcept>
#include <string>

namespace waveid {

// Bad arguments: out-of-range dimension, selector index, bias, domain radii.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Evaluation at a kernel pole or on a light cone.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Non-finite integrand values or a rule that fails its own convergence probe.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed JSON or CLI configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Finite-difference driver would exceed its evaluation budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace waveid
