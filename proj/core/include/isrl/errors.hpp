#pragma once

#include <stdexcept>
#include <string>

namespace isrl {

/// Grid/tensor shape disagreement between operands.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Non-finite values or detected numerical blow-up (e.g. unstable Euler step).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed computation graph (scalar probe unreachable, tensor not on tape, ...).
struct StructuralError : std::logic_error {
    using std::logic_error::logic_error;
};

/// File read/write failure.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent user configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace isrl
