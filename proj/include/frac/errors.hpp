#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frac {

/// Base of every error raised by the operator engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Gamma evaluated at a non-positive integer.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Result (or argument) outside the double-precision range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Argument outside an operator's domain (bad order, exponent <= -1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation requested at a point where the function is unbounded.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Malformed function specification text.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& expected)
        : Error("parse error at byte " + std::to_string(offset) + ": expected " + expected),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace frac
