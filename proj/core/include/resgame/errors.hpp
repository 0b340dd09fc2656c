#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace resgame {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class TooManyServices : public Error {
public:
    using Error::Error;
};

class MissingCoalition : public Error {
public:
    using Error::Error;
};

class DuplicateCoalition : public Error {
public:
    using Error::Error;
};

class InvalidOffer : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Raised when a fixed-point iteration exhausts its sweep budget; carries
/// the last iterate and its residual so callers can inspect how close the
/// run got.
class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, std::vector<double> last_iterate, double residual)
        : Error(what), last_iterate_(std::move(last_iterate)), residual_(residual) {}

    const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
    double residual() const noexcept { return residual_; }

private:
    std::vector<double> last_iterate_;
    double residual_;
};

/// Syntactic problem in a scenario file; line() is 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line) : Error(what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Structurally well-formed input that violates a semantic rule.
class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace resgame
