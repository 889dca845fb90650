#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace entsearch {

/// Input text could not be parsed. Carries the 1-based line of the offence.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A request exceeded a configured exhaustive-enumeration or dimension cap.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& message) : std::runtime_error(message) {}
};

} // namespace entsearch
