#ifndef LAXCOV_ERRORS_HPP
#define LAXCOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace laxcov {

// Base class so callers can catch everything from this library at once.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation outside a field's domain (e.g. off a sampled grid rectangle).
class DomainError : public Error {
public:
    using Error::Error;
};

// A representation cannot honor the request (derivative order, serialization...).
class CapabilityError : public Error {
public:
    using Error::Error;
};

// Dimension or grid mismatch between operands.
class ShapeError : public Error {
public:
    using Error::Error;
};

// A matrix that must be inverted is singular at a sample point.
class SingularityError : public Error {
public:
    using Error::Error;
};

// Parameter sets violating a documented constraint system.
class ConstraintError : public Error {
public:
    using Error::Error;
};

// Degenerate spectral data (defective matrix, vanishing pairing, ...).
class DegeneracyError : public Error {
public:
    using Error::Error;
};

// Bad command line / config input.
class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace laxcov

#endif
