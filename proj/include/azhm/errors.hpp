// errors.hpp - exception types shared by every module

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace azhm {

// Caller violated a precondition (bad argument, empty grid, negative time).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configuration value failed a range or schema check. `field()` is the
// dotted path of the offending value, e.g. "modulation.lambda".
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Input is well-formed but the requested quantity is undefined for it.
class DegenerateInputError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Quadrature or time stepping did not meet its tolerance. Carries whatever
// partial result was available at the point of failure.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double partial_value, double error_estimate)
        : std::runtime_error(what), partial_(partial_value), error_(error_estimate) {}
    double partial_value() const noexcept { return partial_; }
    double error_estimate() const noexcept { return error_; }

private:
    double partial_;
    double error_;
};

} // namespace azhm
