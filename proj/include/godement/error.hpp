#pragma once

#include <stdexcept>
#include <string>

namespace godement {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live on different groups or have different matrix dimensions.
class ShapeMismatch : public Error {
public:
    using Error::Error;
};

/// A precondition on the numeric content of an argument failed
/// (non-PD input, broken equivariance, bad polynomial, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An iterative or spectral construction did not reach its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Malformed serialized input.
class SchemaError : public Error {
public:
    using Error::Error;
};

}  // namespace godement
