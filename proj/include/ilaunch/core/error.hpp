#pragma once

#include <stdexcept>
#include <string>

namespace ilaunch {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user input: scenario files, CLI flags, unknown names.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A broken model invariant. Always a bug in the simulator, never user error.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

// Not enough free slots on a node. Schedulers treat this as "resources unavailable".
class AllocationError : public Error {
public:
    using Error::Error;
};

class ReservationError : public Error {
public:
    using Error::Error;
};

} // namespace ilaunch
