#pragma once

#include <stdexcept>
#include <string>

namespace cvqkd {

// Precondition violated by the caller (bad parameter, wrong shape).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A covariance matrix or spectrum that violates the uncertainty principle.
class InvalidState : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Solver non-convergence or inconsistent intermediate quantities.
class NumericFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Evaluation outside a formula's domain, e.g. a division by T = 0.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace cvqkd
