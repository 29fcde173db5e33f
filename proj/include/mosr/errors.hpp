#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mosr {

// Malformed tree: wrong arity, incomplete prefix sequence, variable index out of range.
class StructureError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// S-expression syntax error; position is a 0-based character offset.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position);
    [[nodiscard]] auto position() const noexcept -> std::size_t { return position_; }

private:
    std::size_t position_;
};

// Bad configuration: missing complexity rule, unknown key, invalid engine settings.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Caller supplied inputs that violate an operation's preconditions.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// NMSE is undefined when the target has zero variance.
class UndefinedTargetError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// CSV could not be read; row and column are 1-based (row 1 is the header).
class CsvError : public std::runtime_error {
public:
    CsvError(const std::string& message, std::size_t row = 0, std::size_t column = 0);
    [[nodiscard]] auto row() const noexcept -> std::size_t { return row_; }
    [[nodiscard]] auto column() const noexcept -> std::size_t { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

} // namespace mosr
