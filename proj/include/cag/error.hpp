#pragma once

#include <stdexcept>
#include <string>

namespace cag {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad index, bad file, violated hypothesis).
class InputError : public Error {
public:
    using Error::Error;
};

/// A well-formed request with no answer within the domain: no PNE, budget exceeded.
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace cag
