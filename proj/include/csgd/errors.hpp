#pragma once

#include <stdexcept>
#include <string>

namespace csgd {

// Base for everything thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shape mismatch between operands.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A documented precondition was violated by the caller.
class ContractViolation : public Error {
public:
    using Error::Error;
};

// An iteration failed to converge, a guard tripped, or a result left the
// representable range.
class NumericalError : public Error {
public:
    using Error::Error;
};

// Evaluation requested outside a kernel's domain (e.g. Hardy outside the disk).
class DomainError : public Error {
public:
    using Error::Error;
};

// Linear solve failed; carries the offending minimum eigenvalue.
class SolverError : public NumericalError {
public:
    SolverError(const std::string& what, double min_eigenvalue)
        : NumericalError(what), min_eigenvalue_(min_eigenvalue) {}
    double min_eigenvalue() const { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

// Data would make the problem singular (duplicate nodes, colliding roots).
class IllPosedError : public Error {
public:
    using Error::Error;
};

// Rejection sampling exhausted its attempt budget.
class SamplingError : public Error {
public:
    using Error::Error;
};

// Bad experiment configuration (CLI layer).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace csgd
