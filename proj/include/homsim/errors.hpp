#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace homsim {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on a numeric argument was violated (empty ensemble,
/// non-positive mean, non-uniform grid, unsorted stream, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration value. `field()` names the offending parameter.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Malformed line in a config document.
class ConfigSyntaxError : public ConfigError {
public:
    ConfigSyntaxError(std::size_t line, const std::string& what)
        : ConfigError("", "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class MissingKeyError : public ConfigError {
public:
    explicit MissingKeyError(const std::string& key)
        : ConfigError(key, "missing required key '" + key + "'") {}
};

class TypeMismatchError : public ConfigError {
public:
    TypeMismatchError(const std::string& key, const std::string& expected, const std::string& got)
        : ConfigError(key, "key '" + key + "' expects " + expected + ", got '" + got + "'") {}
};

class UnknownKeyError : public ConfigError {
public:
    UnknownKeyError(const std::string& key, std::size_t line)
        : ConfigError(key, "line " + std::to_string(line) + ": unknown key '" + key + "'") {}
};

/// A value parsed correctly but is outside its allowed range.
class ValidationError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class IoError : public Error {
public:
    IoError(std::string path, const std::string& what)
        : Error(path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace homsim
