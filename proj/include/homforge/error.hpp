#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homforge {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when operands from different fields, or truncated polynomials with
/// different caps, meet in one operation.
class DomainMismatch : public Error {
public:
    using Error::Error;
};

/// An enumeration or brute-force evaluation ran past its configured budget.
/// `partial` holds how far the enumeration got before giving up.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, std::size_t partial = 0)
        : Error(what), partial_(partial) {}
    std::size_t partial() const noexcept { return partial_; }

private:
    std::size_t partial_;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace homforge
