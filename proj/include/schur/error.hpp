#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace schur {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A size parameter (n, k, a type vector) lies outside the supported range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Arguments are individually valid but inconsistent with each other.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Malformed or non-finite input data.
class DataError : public Error {
public:
    using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
public:
    using Error::Error;
};

/// An internal identity failed to hold. Always an implementation bug,
/// never a consequence of bad input.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// A job would exceed the configured memory budget.
class ResourceError : public Error {
public:
    ResourceError(const std::string& what, std::uint64_t required, std::uint64_t available)
        : Error(what), required_(required), available_(available) {}

    std::uint64_t required_bytes() const noexcept { return required_; }
    std::uint64_t available_bytes() const noexcept { return available_; }

private:
    std::uint64_t required_;
    std::uint64_t available_;
};

}  // namespace schur
