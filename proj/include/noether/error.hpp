#pragma once

#include <stdexcept>
#include <string>

namespace noether {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid construction parameters (non-increasing points, h <= 0, q <= 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An index window is too small, out of range, or two windows do not overlap.
class WindowError : public Error {
public:
    using Error::Error;
};

/// Malformed textual input: scale specs, CSV, family files.
class ParseError : public Error {
public:
    using Error::Error;
};

/// The Newton solver failed; carries the last residual sup-norm.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace noether
