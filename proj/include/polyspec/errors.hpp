#pragma once

#include <stdexcept>
#include <string>

namespace polyspec {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Evaluation requested at (or too close to) a pole.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

// The operation has no closed form for the given shape kind, or the
// requested point lies outside the implemented range.
class Unsupported : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace polyspec
