#pragma once

#include <stdexcept>
#include <string>

namespace qsc {

/// Malformed or out-of-contract input (bad sizes, unparsable text, invariant violations).
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Requested enumeration is larger than the supported bound.
class EnumerationBoundError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// A mathematical precondition fails (divergent series, singular resolvent, e^A >= 1, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A coefficient family violates E_{ab}^dagger = E_{ba}.
class NonHermitianFamily : public InputError {
  public:
    explicit NonHermitianFamily(const std::string &identity)
        : InputError("coefficient family is not Hermitian: " + identity + " violated"), identity_(identity) {}
    const std::string &identity() const noexcept { return identity_; }

  private:
    std::string identity_;
};

/// Step-function breakpoints do not fall on the slot lattice.
class AlignmentError : public InputError {
  public:
    using InputError::InputError;
};

}  // namespace qsc
