#pragma once

#include <stdexcept>
#include <string>

namespace sipsim {

// All library errors derive from Error. The CLI maps ConfigError and its
// subclasses to exit code 1 and everything else to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numeric input outside an operation's domain (bad semi-major axis, e >= 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A model was evaluated where it has no meaningful result.
class ComputeError : public Error {
public:
    using Error::Error;
};

// Reading or writing an output file failed; the message names the path.
class IoError : public Error {
public:
    using Error::Error;
};

// Anything the user can fix by editing a scenario or data file.
class ConfigError : public Error {
public:
    using Error::Error;
};

class CatalogError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class ValidationError : public ConfigError {
public:
    ValidationError(std::string field, const std::string& message)
        : ConfigError(field.empty() ? message : field + ": " + message), field_(std::move(field)), message_(message) {}

    const std::string& field() const noexcept { return field_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::string field_;
    std::string message_;
};

class ParseError : public ConfigError {
public:
    ParseError(std::string source, int line, const std::string& message)
        : ConfigError(source + ":" + std::to_string(line) + ": " + message),
          source_(std::move(source)),
          line_(line) {}

    const std::string& source() const noexcept { return source_; }
    int line() const noexcept { return line_; }

private:
    std::string source_;
    int line_;
};

}  // namespace sipsim
