#pragma once

#include <stdexcept>
#include <string>

namespace fredholm {

/// Raised when a caller violates a precondition (bad index, point outside
/// the interval, malformed breakpoint list, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Base for failures of the numerics themselves. The CLI maps these to
/// exit code 2.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A non-finite integrand value was produced at `abscissa`.
class NumericDomainError : public NumericError {
public:
    NumericDomainError(const std::string& what, double abscissa)
        : NumericError(what), abscissa_(abscissa) {}
    double abscissa() const noexcept { return abscissa_; }

private:
    double abscissa_;
};

/// The Gram matrix has no positive eigenvalue, or a similar situation where
/// no solution can be formed.
class DegenerateProblem : public NumericError {
public:
    using NumericError::NumericError;
};

/// Not enough usable L-curve points to locate a corner.
class InsufficientCurve : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace fredholm
