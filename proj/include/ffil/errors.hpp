#pragma once

#include <stdexcept>
#include <string>

namespace ffil {

// Precondition or malformed-input violations. The CLI maps this to exit 2.
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A configurable resource cap was exceeded (dense solver size, oracle size,
// residual-check size). The CLI maps this to exit 3.
struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ffil
