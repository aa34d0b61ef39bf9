#pragma once

#include <stdexcept>
#include <string>

namespace gi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller passed a value outside an operation's domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The image is too small for the requested periodicity (fewer than two
/// whole periodic units along some axis).
class PeriodicityError : public Error {
public:
    using Error::Error;
};

/// A file or document could not be parsed.
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace gi
