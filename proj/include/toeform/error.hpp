#pragma once

#include <stdexcept>
#include <string>

namespace toeform {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A measure (or line measure) violates its invariants: negative density,
/// non-positive atom mass, duplicated atom angle, malformed descriptor.
class InvalidMeasure : public Error {
public:
    using Error::Error;
};

/// The requested frequency or degree is not resolved by the available grid
/// or quadrature rule.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// An argument is outside the documented domain of an operation.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The operation does not apply to this input (e.g. a witness for a measure
/// without atoms).
class NotApplicable : public Error {
public:
    using Error::Error;
};

/// A numerical self-check failed (e.g. a Hermitian form with a large
/// imaginary residue).
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace toeform
