#pragma once

#include <stdexcept>
#include <string>

namespace schwarzchain {

/// Raised when a configuration value violates a documented precondition
/// (non-positive overlap, unaligned grid, unknown label, ...).
class invalid_config : public std::invalid_argument {
public:
    explicit invalid_config(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a computation cannot be completed reliably (no sign change in a
/// root bracket, singular trace system, non-finite iterate, ...).  The message
/// carries the offending quantities; callers are not expected to recover.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace schwarzchain
