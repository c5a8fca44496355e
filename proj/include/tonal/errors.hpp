#pragma once

#include <stdexcept>
#include <string>

namespace tonal {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (pitch-class set specs, family files).
struct ParseError : Error {
    using Error::Error;
};

/// Violated precondition or out-of-range argument.
struct DomainError : Error {
    using Error::Error;
};

/// A combination that occurs in no transposition of the context set.
/// Distinct from any numeric result: log2(c/0) is undefined.
struct AbsentCombinationError : DomainError {
    using DomainError::DomainError;
};

/// An exact integer result exceeds the checked 64-bit width.
struct OverflowError : DomainError {
    using DomainError::DomainError;
};

} // namespace tonal
