#pragma once

#include <stdexcept>
#include <string>

namespace teamdyn {

// Shape/size disagreement between a value and the object it is used with.
struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Value outside the mathematical domain of an operation (bad parameter,
// boundary point where an interior one is required, ...).
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A precondition that is checked numerically (e.g. "input must be a Nash
// equilibrium") failed.
struct PreconditionError : std::invalid_argument {
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// Numeric failure at runtime: NaN/Inf in an iterate, eigensolver
// non-convergence, ...  `step` is the iteration index when applicable.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what, long step = -1)
        : std::runtime_error(what), step(step) {}
    long step;
};

// Request exceeds the supported problem scale.
struct CapabilityError : std::runtime_error {
    explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed experiment configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace teamdyn
