#pragma once

#include <stdexcept>
#include <string>

namespace pgt {

/// Bad argument: dimension mismatch, probability out of range, etc.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Design parameters admit no valid construction (CLI exit code 1).
class InfeasibleParameters : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed GTMAT, signal or outcome input (CLI exit code 2).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exhaustive enumeration would exceed its configured size guard.
class GuardExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pgt
