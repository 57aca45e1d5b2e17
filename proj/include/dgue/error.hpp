#pragma once

#include <stdexcept>
#include <string>

namespace dgue {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration: bad law parameters, variance mismatch, malformed config keys.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Input outside the domain of an operation (branch cut, singular point, bad parameter range).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A numerical routine failed (non-convergence, loss of positivity, stiffness).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Quadrature or discretisation did not reach its accuracy target.
/// `diagnostics` holds a JSON document describing the failing evaluation.
class AccuracyError : public NumericalError {
public:
    AccuracyError(const std::string& what, std::string diagnostics)
        : NumericalError(what), diagnostics_(std::move(diagnostics)) {}

    const std::string& diagnostics() const noexcept { return diagnostics_; }

private:
    std::string diagnostics_;
};

}  // namespace dgue
