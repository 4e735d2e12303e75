#pragma once

#include <stdexcept>
#include <string>

namespace dlda {

// Error taxonomy. The CLI maps each category to a distinct exit code.

// Invalid configuration or precondition violation (dimensions, ranges, ...).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input data (out-of-range word index, empty document, ...).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure (zero-probability state, degenerate row, ...).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problem instance too large for an exact method.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Randomized generation failed within its retry budget.
struct GenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File read/write/parse failure.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dlda
