#pragma once

#include <stdexcept>
#include <string>

namespace chartml {

// Problems with input data: malformed files, invariant violations, shape
// mismatches. The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid parameters or configuration. The CLI maps these to exit code 1.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace chartml
