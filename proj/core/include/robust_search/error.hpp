#pragma once

#include <stdexcept>
#include <string>

namespace robust_search {

/// Base of every error raised by the library. Callers that only need to
/// distinguish "bad input" from bugs can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (probabilities outside [0,1], unsorted
/// support, a non-monotone rule where a monotone one is required, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A cost model or option set that describes no well-posed search problem.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Input that is valid but outside what a particular routine supports.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

}  // namespace robust_search
