#pragma once

#include <stdexcept>
#include <string>

namespace tfim {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad parameters or preconditions. The CLI maps this to exit code 2.
class InvalidConfig : public Error {
public:
    using Error::Error;
};

// Integrator or unitarity quality failure. The CLI maps this to exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

// chi' at zero frequency diverges logarithmically at the critical point.
class LogDivergence : public Error {
public:
    using Error::Error;
};

// Monodromy eigenvalue too close to -1 for the Cayley transform.
class ZoneEdgeError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Two Floquet eigenphases coincide and the modes cannot be separated.
class DegeneracyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace tfim
