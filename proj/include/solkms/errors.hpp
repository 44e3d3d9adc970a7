#pragma once

#include <stdexcept>
#include <string>

namespace solkms {

struct DegreeCapError : std::runtime_error {
    explicit DegreeCapError(const std::string& what) : std::runtime_error(what) {}
};

struct LevelMismatchError : std::invalid_argument {
    explicit LevelMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

struct NotSubinvariantError : std::runtime_error {
    int index;
    NotSubinvariantError(const std::string& what, int idx)
        : std::runtime_error(what), index(idx) {}
};

// beta < 0 admits no states at all; constructing such a configuration is an error.
struct NoKmsStatesError : std::invalid_argument {
    explicit NoKmsStatesError(const std::string& what) : std::invalid_argument(what) {}
};

// theta0 == 0 is the degenerate tensor-product regime, outside this library's scope.
struct DegenerateThetaError : std::invalid_argument {
    explicit DegenerateThetaError(const std::string& what) : std::invalid_argument(what) {}
};

struct ParseError : std::invalid_argument {
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace solkms
