#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edgecs {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shape or length disagreement between two operands.
class DimensionError : public Error {
public:
    DimensionError(const std::string& what, std::size_t expected, std::size_t actual)
        : Error(what + ": expected " + std::to_string(expected) + ", got " +
                std::to_string(actual)),
          expected_(expected),
          actual_(actual) {}

    std::size_t expected() const noexcept { return expected_; }
    std::size_t actual() const noexcept { return actual_; }

private:
    std::size_t expected_;
    std::size_t actual_;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// No selection satisfies the data requirement under the skew filter.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

inline void require_size(const char* what, std::size_t expected, std::size_t actual) {
    if (expected != actual) throw DimensionError(what, expected, actual);
}

}  // namespace edgecs
