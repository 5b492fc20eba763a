#pragma once

#include <stdexcept>
#include <string>

namespace bohm {

/// Process exit codes used by the CLI. Each error class below maps to one.
enum class ExitCode : int {
    success = 0,
    config_parse = 2,
    numerical = 3,
    io = 4,
    config_schema = 5,
    config_physics = 6,
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    [[nodiscard]] virtual ExitCode exit_code() const noexcept = 0;
};

/// Malformed configuration text, or an unknown preset name.
class ConfigError : public Error {
public:
    using Error::Error;
    [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::config_parse; }
};

/// Configuration that parses but violates the published schema.
class SchemaError : public ConfigError {
public:
    SchemaError(const std::string& field, const std::string& what)
        : ConfigError(field + ": " + what), field_(field) {}
    [[nodiscard]] const std::string& field() const noexcept { return field_; }
    [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::config_schema; }

private:
    std::string field_;
};

/// A physical invariant of an input type does not hold.
class PhysicsError : public ConfigError {
public:
    using ConfigError::ConfigError;
    [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::config_physics; }
};

/// Arithmetic or conversion across incompatible unit tags.
class UnitError : public Error {
public:
    using Error::Error;
    [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::numerical; }
};

/// Argument outside an operation's mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
    [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::numerical; }
};

/// Node halts, invalid ensembles, empty quadrature ranges.
class NumericalError : public Error {
public:
    using Error::Error;
    [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::numerical; }
};

class IoError : public Error {
public:
    using Error::Error;
    [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::io; }
};

}  // namespace bohm
