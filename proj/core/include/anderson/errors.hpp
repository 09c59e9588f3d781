#pragma once
// Exception types shared by every module. Each one maps to a distinct failure
// class so callers (and the CLI) can tell bad input from a violated hypothesis.

#include <stdexcept>
#include <string>

namespace anderson {

// Input outside the operation's domain (empty sets, l >= L, non-subset, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Request exceeds what the chosen backend can do (e.g. vectors above dense cap).
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A documented precondition of a numerical identity does not hold.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Energy too close to the spectrum for a stable solve.
struct NearSingularError : std::runtime_error {
    NearSingularError(const std::string& what, double dist)
        : std::runtime_error(what), distance(dist) {}
    double distance;
};

// The probabilistic hypothesis of an estimate fails (e.g. no bounded density).
struct HypothesisError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace anderson
