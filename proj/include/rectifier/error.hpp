#pragma once

#include <stdexcept>
#include <string>

namespace rectifier {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (syntax, unknown names, bad declarations).
class input_error : public error {
public:
    using error::error;
};

/// A brute-force routine was asked to enumerate more variables than allowed.
class cap_exceeded : public error {
public:
    using error::error;
};

/// An operation that presupposes the XY-classification property received a
/// classifier that is not certified.
class certification_error : public error {
public:
    using error::error;
};

}  // namespace rectifier
