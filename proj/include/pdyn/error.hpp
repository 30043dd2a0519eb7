#pragma once

#include <stdexcept>
#include <string>

namespace pdyn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mismatched names, dependency cycles, malformed model wiring.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A stock or auxiliary became NaN or infinite.
class NumericError : public Error {
public:
    NumericError(const std::string& what, std::size_t step, std::string stock)
        : Error(what), step_(step), stock_(std::move(stock)) {}

    std::size_t step() const noexcept { return step_; }
    const std::string& stock() const noexcept { return stock_; }

private:
    std::size_t step_;
    std::string stock_;
};

/// An argument outside the domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed input text (CSV, JSON, dates).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A derivation in the calibration chain failed; field() names the input at fault.
class CalibrationError : public Error {
public:
    CalibrationError(const std::string& field, const std::string& what)
        : Error(field + ": " + what), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Scenario file could not be loaded; key() names the offending key.
class LoadError : public Error {
public:
    LoadError(const std::string& key, const std::string& what)
        : Error(key.empty() ? what : key + ": " + what), key_(key) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

} // namespace pdyn
