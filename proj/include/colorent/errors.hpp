#pragma once

#include <stdexcept>
#include <string>

namespace colorent {

/// Invalid physical or numerical parameter (violated invariant, out-of-range value).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Frequency arithmetic produced a non-physical value (e.g. a non-positive
/// anti-Stokes frequency).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Both heralded channels are dark: there is no state to normalize.
class NoHeraldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace colorent
