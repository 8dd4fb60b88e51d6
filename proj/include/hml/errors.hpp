#pragma once

#include <stdexcept>
#include <string>

namespace hml {

// Parameter / input violations: caller passed something outside a contract.
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures: truncation not achievable, solver did not converge, etc.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Object used before a required setup step (e.g. an uncalibrated law).
class state_error : public std::runtime_error {
 public:
  explicit state_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hml
