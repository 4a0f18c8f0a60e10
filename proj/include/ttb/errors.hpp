#pragma once

#include <stdexcept>
#include <string>

namespace ttb {

/// Raised for malformed or inconsistent configuration input.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a linear solve cannot be completed (singular or
/// numerically rank-deficient matrix).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ttb
