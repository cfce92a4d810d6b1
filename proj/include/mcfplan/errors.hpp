#pragma once

#include <stdexcept>
#include <string>

namespace mcfplan {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A precondition on an operation's arguments was violated.
struct InvalidInput : Error {
    using Error::Error;
};

// Fundamental-mode decay parameter came out <= 0: the V-number is below the
// validity range of the linear fit and the coupling model cannot be applied.
struct NonPositiveW : Error {
    using Error::Error;
};

// Geometry or parameterization left the guided-mode regime (e.g. U1^2 < 0).
struct OutsideModel : Error {
    using Error::Error;
};

// A frequency curve was asked for a value outside its tabulated domain.
// Curves never extrapolate.
struct MissingCurve : Error {
    using Error::Error;
};

// Structured-text input could not be parsed; message carries file/line/field.
struct ParseError : Error {
    using Error::Error;
};

// No route exists between the requested endpoints.
struct NoPath : Error {
    using Error::Error;
};

} // namespace mcfplan
