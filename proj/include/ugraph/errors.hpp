#pragma once

#include <stdexcept>
#include <string>

namespace ugraph {

/// No admissible cover of the requested points exists at the search
/// resolution (triangle-free location only).
struct InfeasibleCoverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The graded pattern enumeration was asked for an index beyond the
/// configured materialization budget.
struct EnumerationHorizonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A lazy construction exceeded its configured step budget.
struct StepLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adjacency queried at x == y (graphs here have no loops).
struct LoopEdgeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A construction step could not satisfy its invariants within the
/// epsilon-shrink budget. Indicates a defect, not a recoverable state.
struct ConstructionFailure : std::logic_error {
    using std::logic_error::logic_error;
};

/// Vertex measure incompatible with the graphon variant.
struct IncompatibleModelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operation not defined for this graphon variant (e.g. exact cylinder
/// values for indicator graphons).
struct UnsupportedVariantError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Exact evaluation refused because the configuration exceeds the
/// documented complexity guard.
struct ComplexityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A caller-supplied point set violates an operation precondition
/// (e.g. adjacent whites in triangle-free witness queries).
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Tuple resampling failed to find an admissible tuple within its budget.
struct TupleExhaustionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ugraph
