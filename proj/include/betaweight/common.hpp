#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bw {

// Argument outside the mathematical domain of an operation (e.g. lgamma(-1)).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Caller broke an API contract (shape/layout mismatch, label out of range, ...).
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

// Invalid or infeasible run configuration (bad sizes, missing data, ...).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file; carries the byte offset where parsing failed.
struct FormatError : std::runtime_error {
    FormatError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " (at byte offset " + std::to_string(offset) + ")"),
          byte_offset(offset) {}
    std::size_t byte_offset;
};

}  // namespace bw
