#pragma once

#include <stdexcept>
#include <string>

namespace frl {

/** @brief Root of every error raised by the library. */
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain (y = 0, beta = 0 under Kropina, non-PD metric, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Non-finite intermediate value.
class NumericError : public Error {
public:
    using Error::Error;
};

/// A cascade scalar of the inverse metric vanished.
class SingularError : public Error {
public:
    SingularError(std::string which, const std::string& what)
        : Error(what), which_(std::move(which)) {}
    const std::string& which() const noexcept { return which_; }

private:
    std::string which_;
};

/// Malformed configuration or caller arguments.
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace frl
