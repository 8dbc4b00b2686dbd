#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tubular {

// Base of every error raised by the library. Callers that only care about
// "bad input vs. bug" can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), message_(what), position_(position) {}
    std::size_t position() const { return position_; }
    const std::string& message() const { return message_; }

private:
    std::string message_;
    std::size_t position_;
};

class FieldMismatch : public Error {
    using Error::Error;
};

class ChartMismatch : public Error {
    using Error::Error;
};

// Negative exponent on a variable that is not invertible in the ring at hand.
class FlagViolation : public Error {
    using Error::Error;
};

class NotAUnit : public Error {
    using Error::Error;
};

class NotInvertible : public Error {
    using Error::Error;
};

class TruncationLoss : public Error {
    using Error::Error;
};

class InsufficientPrecision : public Error {
    using Error::Error;
};

class NotInW : public Error {
    using Error::Error;
};

class IllegalArrow : public Error {
    using Error::Error;
};

class IllegalTag : public Error {
    using Error::Error;
};

class Unsupported : public Error {
    using Error::Error;
};

class MissingData : public Error {
    using Error::Error;
};

class SceneError : public Error {
public:
    SceneError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace tubular
