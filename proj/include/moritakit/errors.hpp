#pragma once

#include <stdexcept>
#include <string>

namespace moritakit {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shape / size mismatch between matrices or tables.
struct DimensionError : Error {
    using Error::Error;
};

/// A matrix that was required to lie in an algebra's span does not.
struct MembershipError : Error {
    using Error::Error;
};

/// Invalid argument (index out of range, mismatched actions, ...).
struct ArgumentError : Error {
    using Error::Error;
};

/// A documented precondition of an operation does not hold.
struct PreconditionError : Error {
    using Error::Error;
};

/// Malformed input file or example description.
struct ValidationError : Error {
    using Error::Error;
};

}  // namespace moritakit
