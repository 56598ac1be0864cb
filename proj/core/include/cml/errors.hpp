#pragma once

#include <stdexcept>
#include <string>

namespace cml {

// Malformed input: bad files, unknown variables, out-of-range values,
// formulas outside the fragment an operation requires.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configurable enumeration guard was exceeded.
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cml
