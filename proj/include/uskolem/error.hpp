#pragma once

#include <stdexcept>
#include <string>

namespace uss {

/// Base of all library errors. The CLI maps each subclass to an exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Request exceeds a configured cap (sieve size, scan cap, exact-evaluation cap).
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Caller broke an operation's precondition (e.g. non-minimal recurrence).
class ContractViolation : public Error {
public:
    using Error::Error;
};

}  // namespace uss
