#pragma once

#include <stdexcept>
#include <string>

namespace superpov {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or invalid input data (CSV, SPPV, manifests, dates).
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace superpov
