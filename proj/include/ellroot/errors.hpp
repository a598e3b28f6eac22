#pragma once
#include <stdexcept>
#include <string>

namespace ellroot {

// Error families map onto CLI exit codes (see cli.hpp).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// bad input: zero arguments, malformed descriptors, violated preconditions
struct DomainError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
// outside the supported scope (isotrivial surfaces, 2/3-adic data, ...)
struct ScopeError : Error {
    using Error::Error;
};
// a named hypothesis of a variation / family statement fails
struct HypothesisError : Error {
    using Error::Error;
};
struct BudgetExceeded : Error {
    using Error::Error;
};

}  // namespace ellroot
