#pragma once

#include <stdexcept>
#include <string>

namespace skinspec {

/// Input violates a documented precondition (bad order, inadmissible coefficients, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative solver did not converge, or a computed quantity failed its certification.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Winding number requested for a point lying on the sampled curve.
class PointOnCurve : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A curve is sampled too coarsely for an argument-increment winding count.
class InsufficientSampling : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace skinspec
