#pragma once

#include <stdexcept>
#include <string>

namespace magnetic {

/// Base class of everything the library throws on bad input or state.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad Gram matrix, wrong weight, ...).
struct InputError : Error {
    using Error::Error;
};

/// A coefficient was requested at or beyond the known precision of a series.
struct PrecisionError : Error {
    PrecisionError(const std::string& what, std::string required_precision)
        : Error(what), required(std::move(required_precision)) {}
    std::string required;
};

/// A mathematical invariant that the construction guarantees was violated.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace magnetic
