#pragma once

#include <stdexcept>
#include <string>

namespace jdopt {

/// Base class for all errors thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid constructor argument or config value.
struct ValidationError : Error {
    using Error::Error;
};

/// G(gamma) evaluated too close to the pole at gamma = eta.
struct PoleAtEta : Error {
    using Error::Error;
};

/// An exponent of a piecewise function coincides with eta.
struct PoleGuard : Error {
    using Error::Error;
};

/// A sign-change bracket could not be established for a scalar root.
struct BracketFailure : Error {
    using Error::Error;
};

/// The scanned function does not change sign on the search interval.
struct NoSignChange : Error {
    using Error::Error;
};

/// Harvest problem requested with mu + lambda/eta <= 0.
struct TrendNotPositive : Error {
    using Error::Error;
};

/// Evaluation outside the function's domain (x < 0).
struct DomainError : Error {
    using Error::Error;
};

/// Simulation config violates its invariants.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace jdopt
