#pragma once

#include <stdexcept>
#include <string>

namespace singquad {

/// An iterative or adaptive numerical scheme failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A point lies outside the set on which an asymptotic form is valid.
class OutsideValidityDomain : public std::domain_error {
 public:
  explicit OutsideValidityDomain(const std::string& what) : std::domain_error(what) {}
};

}  // namespace singquad
