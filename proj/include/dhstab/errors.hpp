#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dhstab {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform (non-square input, size mismatch, ...).
struct DimensionError : Error {
    using Error::Error;
};

/// Real-mode / complex-mode operands were mixed where that is not allowed.
struct ModeError : Error {
    using Error::Error;
};

/// A Cholesky pivot was not strictly positive.
struct NotPositiveDefiniteError : Error {
    using Error::Error;
};

/// A parameter violated its documented range.
struct ValidationError : Error {
    using Error::Error;
};

/// An iterative method hit its iteration cap. Carries whatever eigenvalues
/// had already deflated so callers can diagnose.
struct ConvergenceError : Error {
    std::vector<std::complex<double>> partial_values;

    ConvergenceError(const std::string& what, std::vector<std::complex<double>> partial = {})
        : Error(what), partial_values(std::move(partial)) {}
};

/// Text input did not match the expected grammar. `position` is a 0-based
/// character offset into the input.
struct ParseError : Error {
    std::size_t position;

    ParseError(const std::string& what, std::size_t pos) : Error(what), position(pos) {}
};

/// A file could not be read or written.
struct IoError : Error {
    using Error::Error;
};

/// A solver failed in a way the caller cannot recover from.
struct SolverError : Error {
    using Error::Error;
};

/// A documented hard postcondition did not hold on output.
struct PostconditionError : Error {
    using Error::Error;
};

} // namespace dhstab
