#pragma once

#include <stdexcept>
#include <string>

namespace beurling {

// Bad parameters or malformed input (CLI exit code 2).
struct validation_error : std::invalid_argument {
    explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Query outside the materialized range; answering would silently undercount.
struct range_error : std::out_of_range {
    explicit range_error(const std::string& msg) : std::out_of_range(msg) {}
};

// Estimated work exceeds a configured cap (CLI exit code 3).
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace beurling
