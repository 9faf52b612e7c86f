#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tadecay {

// Every library error derives from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input that fails a documented precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Numerical or runtime failure on valid input.
class NumericalError : public Error {
public:
    using Error::Error;
};

class CausalityViolation : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NegativeDuration : public CausalityViolation {
public:
    using CausalityViolation::CausalityViolation;
};

class NonHardyTest : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class GridNotUniform : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InsufficientDecay : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NotAStateFunction : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidConfig : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NoBrightLevel : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InsufficientPoints : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonDecayingData : public NumericalError {
public:
    NonDecayingData(const std::string& what, double slope)
        : NumericalError(what), slope_(slope) {}
    double slope() const noexcept { return slope_; }

private:
    double slope_;
};

class QuadratureFailure : public NumericalError {
public:
    QuadratureFailure(const std::string& what, double achieved_error, std::size_t evaluations)
        : NumericalError(what), achieved_error_(achieved_error), evaluations_(evaluations) {}
    double achieved_error() const noexcept { return achieved_error_; }
    std::size_t evaluations() const noexcept { return evaluations_; }

private:
    double achieved_error_;
    std::size_t evaluations_;
};

class ParseError : public ValidationError {
public:
    ParseError(std::size_t line, const std::string& reason)
        : ValidationError("line " + std::to_string(line) + ": " + reason), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class UnknownKey : public ValidationError {
public:
    UnknownKey(std::size_t line, const std::string& key)
        : ValidationError("line " + std::to_string(line) + ": unknown key '" + key + "'"),
          key_(key) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class RangeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

} // namespace tadecay
