#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fock cutoff too small for the requested construction; carries the
// smallest n_max that would pass the check.
struct CutoffTooSmall : Error {
    int required_n_max;
    CutoffTooSmall(const std::string& what, int required)
        : Error(what + " (suggested n_max >= " + std::to_string(required) + ")"),
          required_n_max(required) {}
};

struct IndexOutOfRange : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct NonHermitian : Error {
    using Error::Error;
};
struct NotInteger : Error {
    using Error::Error;
};
struct NotHalfInteger : Error {
    using Error::Error;
};
struct OffResonance : Error {
    using Error::Error;
};
struct FrameMismatch : Error {
    using Error::Error;
};
struct StepTooLarge : Error {
    using Error::Error;
};

}  // namespace dicke
