#pragma once

#include <stdexcept>
#include <string>

namespace pluriform {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A function was evaluated outside its domain (non-finite value or derivative).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid construction parameter (alpha <= 0, n < 3, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Velocity Hessian singular or too ill-conditioned to solve against.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

/// Newton inversion of the Legendre map did not converge.
class InversionError : public Error {
public:
    using Error::Error;
};

/// Symmetry / axis index out of range.
class IndexError : public Error {
public:
    using Error::Error;
};

} // namespace pluriform
