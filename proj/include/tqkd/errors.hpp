#pragma once

#include <stdexcept>
#include <string>

namespace tqkd {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Mode or party index outside the valid range.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Covariance matrix violating the uncertainty principle
// (a symplectic eigenvalue below 1 - tol).
class UnphysicalStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tqkd
