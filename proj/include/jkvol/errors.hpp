#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace jkvol {

// Malformed arguments to a library call (bad ranges, inconsistent sizes, parse failures).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input data that parses but violates a documented precondition (weights outside (0,1), m too small).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computation that requires weights off every wall met an exact zero where a sign was needed.
// Carries the offending fixed points (as 1-based vertex assignments) when known.
class NonGenericError : public std::runtime_error {
public:
    explicit NonGenericError(const std::string& what_arg,
                             std::vector<std::vector<int>> offending = {})
        : std::runtime_error(what_arg), offending_points(std::move(offending)) {}

    std::vector<std::vector<int>> offending_points;
};

// Operation applied outside the stability class it is defined for.
class StabilityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Two routes that must agree exactly produced different values.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace jkvol
