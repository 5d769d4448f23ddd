#pragma once

#include <stdexcept>
#include <string>

namespace arctic {

// Base class for every error thrown by the library. Subclasses exist so that
// callers (and tests) can distinguish failure modes; the what() string always
// carries the offending values.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Slope at or outside the open slope domain of a step set.
struct SlopeOutOfDomain : Error {
    using Error::Error;
};

// An iterative solver exhausted its iteration budget.
struct NoConvergence : Error {
    using Error::Error;
};

// Requested value outside the attainable range of an inverted function.
struct ValueOutOfRange : Error {
    using Error::Error;
};

// Integer index outside its documented range.
struct IndexRange : Error {
    using Error::Error;
};

// Triangularity of an L/U factor entry violated (i<j for L, i>j for U).
struct IndexOrder : Error {
    using Error::Error;
};

// An oracle was asked for an instance above its configured size cap.
struct CapExceeded : Error {
    using Error::Error;
};

// Exhaustive permutation search asked for more entries than supported.
struct SizeCap : Error {
    using Error::Error;
};

// Tangency requested where the straight chord never crosses the curve.
struct NoArc : Error {
    using Error::Error;
};

// Adaptive quadrature could not reach the requested tolerance within budget.
struct QuadratureFailure : Error {
    using Error::Error;
};

// Envelope construction hit |dt*/dr| below the degeneracy threshold.
struct DegenerateEnvelope : Error {
    using Error::Error;
};

// Derivative of a tabulated rate function requested at/next to the table edge.
struct EdgeOfTable : Error {
    using Error::Error;
};

// Argument outside a function's mathematical domain (e.g. asm entropy outside
// the half-unit square).
struct DomainError : Error {
    using Error::Error;
};

}  // namespace arctic
