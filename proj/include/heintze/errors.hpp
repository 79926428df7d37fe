#pragma once

#include <stdexcept>
#include <string>

namespace heintze {

/// Malformed Jordan data: non-positive eigenvalue, empty block, complex spectrum.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A level (alpha, ell) that does not exist in the basis.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Argument outside the domain of a function (t <= 0 for a dilation, w outside (0,1), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure could not reach the requested accuracy.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An empirically observed quantity left the band declared by the caller.
class ContractViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace heintze
