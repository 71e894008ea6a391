#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace purcell {

class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Query outside the domain where a field model is defined (no extrapolation).
class OutOfDomain : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Reference double sum is zero, negative or vanishingly small.
class DegenerateReference : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Phase of a zero projected field.
class UndefinedPhase : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace purcell
