#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sigma2 {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed regular expression text; `position` is a byte offset into the input.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message)
        : Error("parse error at " + std::to_string(position) + ": " + message), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class UnknownSymbol : public Error {
public:
    explicit UnknownSymbol(const std::string& symbol)
        : Error("unknown symbol '" + symbol + "'"), symbol_(symbol) {}

    const std::string& symbol() const noexcept { return symbol_; }

private:
    std::string symbol_;
};

class AlphabetMismatch : public Error {
public:
    AlphabetMismatch() : Error("operands are over different alphabets") {}
};

class MonoidTooLarge : public Error {
public:
    explicit MonoidTooLarge(std::size_t limit)
        : Error("transition monoid exceeds " + std::to_string(limit) + " elements") {}
};

/// A value violates the documented domain of an operation.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Raised when k > r - 1 in entailment experiments, where no k-set of other positions exists.
class DegenerateConfig : public Error {
public:
    using Error::Error;
};

/// An operation's documented precondition does not hold on its input.
class PreconditionViolated : public Error {
public:
    using Error::Error;
};

}  // namespace sigma2
