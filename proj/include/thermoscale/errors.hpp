#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace thermoscale {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input: malformed specs, configs, or argument domains.
struct ValidationError : Error {
    using Error::Error;
};

struct NonPositiveInput : ValidationError {
    using ValidationError::ValidationError;
};

// RSA could not place the requested sphere count within the attempt budget.
struct PackingInfeasible : Error {
    PackingInfeasible(const std::string& what, std::uint64_t attempts_used)
        : Error(what), attempts(attempts_used) {}
    std::uint64_t attempts;
};

struct MissingPhaseEntry : ValidationError {
    using ValidationError::ValidationError;
};

// Iterative solve exceeded its iteration cap.
struct NonConvergence : Error {
    NonConvergence(const std::string& what, std::uint64_t iters)
        : Error(what), iterations(iters) {}
    std::uint64_t iterations;
};

// Asked for an effective component along an axis that carries no gradient.
struct DegenerateGradient : Error {
    using Error::Error;
};

// A homogenized component escaped the Reuss-Voigt interval: solver or
// averaging bug, never a tolerance issue.
struct BoundsViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct EmptySamples : ValidationError {
    using ValidationError::ValidationError;
};
struct ZeroWeightSum : ValidationError {
    using ValidationError::ValidationError;
};
struct NegativeWeight : ValidationError {
    using ValidationError::ValidationError;
};

struct MalformedWeather : Error {
    using Error::Error;
};

// Divergence guard tripped during time integration.
struct NonFiniteState : Error {
    using Error::Error;
};

}  // namespace thermoscale
