#pragma once

#include <stdexcept>
#include <string>

namespace bcfw {

// Bad solver/oracle configuration (tau out of range, wrong mode, ...).
class InvalidConfigError : public std::runtime_error {
 public:
  explicit InvalidConfigError(const std::string& what) : std::runtime_error(what) {}
};

// An iterate or oracle vertex left its feasible set beyond tolerance.
class FeasibilityError : public std::runtime_error {
 public:
  explicit FeasibilityError(const std::string& what) : std::runtime_error(what) {}
};

// Exact enumeration requested beyond the configured limits.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite values encountered where finite math was required.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace bcfw
