#pragma once

#include <stdexcept>
#include <string>

namespace onoma {

// Malformed input data (bad line, unknown code, undecodable bytes).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line) {}
    explicit ParseError(std::string message)
        : std::runtime_error(std::move(message)), line_(0) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Violated numeric or structural precondition (empty sample, single class,
// singular matrix, ...).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace onoma
