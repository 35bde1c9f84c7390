#pragma once

#include <stdexcept>

namespace gurlab {

// Shape or size disagreement between arguments.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A stated precondition does not hold: unnormalized state, non-Hermitian
// observable, out-of-range index or parameter, malformed input file.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A numerical cross-check failed beyond tolerance: an expectation value that
// should be real has a large imaginary residual, or two redundant routes to
// the same quantity disagree.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace gurlab
