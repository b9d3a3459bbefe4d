#pragma once

#include <stdexcept>
#include <string>

namespace pifweno {

/// A state with non-positive density (or pressure, where one is required)
/// reached an operation that needs an admissible state.
class InvalidStateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An invariant the method guarantees was violated. Always a bug (or a broken
/// precondition such as CFL > 0.5), never a recoverable condition.
class InternalInvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Bad user input: config keys, mesh strings, boundary setups.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pifweno
