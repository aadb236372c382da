#pragma once

#include <stdexcept>
#include <string>

namespace rootcert {

// Argument outside the mathematical domain of an operation (zero pairing
// argument, reflection in a non-root, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Caller violated a documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An enumeration or search would exceed a configured bound.
class RefusalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Something that a theorem guarantees did not happen. Always a bug or a
// corrupted input.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace rootcert
