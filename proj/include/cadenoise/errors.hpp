#pragma once

#include <stdexcept>
#include <string>

namespace cadenoise {

/// Malformed image data or incompatible inputs (e.g. dimension mismatch).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cadenoise
