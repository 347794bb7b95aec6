#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pursuit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A coordinate or timestamp that is NaN or infinite.
class InvalidSampleError : public Error {
public:
    using Error::Error;
};

/// Gaze timestamps must be strictly increasing.
class OrderingError : public Error {
public:
    using Error::Error;
};

/// Target ids passed to the detector do not match its configured layout.
class LayoutMismatchError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace pursuit
