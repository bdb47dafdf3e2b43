#pragma once

#include <stdexcept>

namespace pyrtex {

// Caller violated an API precondition (shape mismatch, bad parameter).
class contract_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Filesystem or stream failure.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Readable file, but not a format this library speaks.
class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline double clamp01(double v) {
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

}  // namespace pyrtex
