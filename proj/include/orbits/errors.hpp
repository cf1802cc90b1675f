#pragma once

#include <stdexcept>
#include <string>

namespace orbits {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (rationals, map specs, configs).
class ParseError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A configured enumeration or memory limit would be exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

}  // namespace orbits
