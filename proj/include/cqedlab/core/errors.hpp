#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cqedlab {

// Input outside the mathematical domain of a formula (non-positive capacitance,
// flux at a derivative singularity, degenerate detuning, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A fit could not be set up or produced no usable estimate.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Schema violation in a JSON document; path is a dotted field path.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string path, const std::string& what)
        : std::invalid_argument(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

// Malformed CSV input; line is 1-based.
class ParseError : public std::invalid_argument {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::invalid_argument("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cqedlab
