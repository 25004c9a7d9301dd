#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rsom {

// Malformed input data (CSV, JSON documents).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}

    // 1-based; 0 when the error is not tied to a line.
    std::size_t line() const { return line_; }

private:
    std::size_t line_ = 0;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rsom
