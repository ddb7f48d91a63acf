#pragma once

#include <stdexcept>
#include <string>

namespace jadm {

/// Operand shapes do not agree, or a square matrix was expected.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller broke an operation's precondition (wrong base point, bad parameter range, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point is too far from its manifold to be repaired.
class ManifoldError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Y does not satisfy det(Y^H Y) = 1.
class NotInRslError : public ManifoldError {
 public:
  using ManifoldError::ManifoldError;
};

/// An internal consistency check failed (cost increase, inconsistent coefficient forms).
class NumericalIntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jadm
