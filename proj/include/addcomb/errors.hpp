#pragma once

#include <stdexcept>
#include <string>

namespace addcomb {

// Base for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller misuse: mismatched group specs, invalid parameters, malformed input.
// CLI exit code 2.
struct UsageError : Error {
    using Error::Error;
};

// A configured exactness cap was exceeded. The operation refuses to guess;
// raise the cap or use a heuristic mode. CLI exit code 3.
struct CapacityError : Error {
    using Error::Error;
};

// An internal invariant failed (iteration guard tripped, precision
// exhausted). Indicates a bug, not bad input. CLI exit code 1.
struct InternalError : Error {
    using Error::Error;
};

} // namespace addcomb
