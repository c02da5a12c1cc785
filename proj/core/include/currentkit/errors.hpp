#pragma once

#include <stdexcept>
#include <string>

namespace currentkit {

// Base of everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input: rejected before any computation ran.
struct ValidationError : Error {
    using Error::Error;
};

// A computed result failed one of its own postconditions.
struct PostconditionError : Error {
    using Error::Error;
};

struct DegeneratePoints : ValidationError {
    using ValidationError::ValidationError;
};

// Two geodesics share an endpoint; transversality is undefined there.
struct SharedEndpoint : Error {
    using Error::Error;
};

struct OverlappingIntervals : ValidationError {
    using ValidationError::ValidationError;
};

struct NotHyperbolic : ValidationError {
    using ValidationError::ValidationError;
};

struct EllipticElement : ValidationError {
    using ValidationError::ValidationError;
};

struct UnknownGenerator : ValidationError {
    using ValidationError::ValidationError;
};

struct UnknownSurface : ValidationError {
    using ValidationError::ValidationError;
};

struct ResourceLimit : Error {
    using Error::Error;
};

struct NoCrossing : ValidationError {
    using ValidationError::ValidationError;
};

struct ValidationFailed : PostconditionError {
    using PostconditionError::PostconditionError;
};

struct NoHyperbolicBranch : PostconditionError {
    using PostconditionError::PostconditionError;
};

struct StepLimit : PostconditionError {
    using PostconditionError::PostconditionError;
};

struct NonInvertible : ValidationError {
    using ValidationError::ValidationError;
};

struct SpectrumPairingFailed : ValidationError {
    using ValidationError::ValidationError;
};

struct DegenerateFamily : ValidationError {
    using ValidationError::ValidationError;
};

} // namespace currentkit
