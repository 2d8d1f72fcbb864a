#pragma once

#include <stdexcept>
#include <string>

namespace xbar {

struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

// A matrix entry handed to the crossbar mapper lies outside [0, 1].
struct MappingRangeError : std::runtime_error {
    explicit MappingRangeError(const std::string& what) : std::runtime_error(what) {}
};

// The realized conductance matrix is numerically singular (condition estimate > 1e12).
struct SingularArrayError : std::runtime_error {
    explicit SingularArrayError(const std::string& what) : std::runtime_error(what) {}
};

// Right-hand side violates the augmented-system layout (nonzero in an auxiliary row).
struct LayoutError : std::runtime_error {
    explicit LayoutError(const std::string& what) : std::runtime_error(what) {}
};

struct NotPsdError : std::runtime_error {
    explicit NotPsdError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace xbar
