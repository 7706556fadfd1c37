#pragma once

#include <stdexcept>
#include <string>

namespace cartansuper {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// A FamilySpec violates the n-constraints of its series.
struct FamilyConstraintError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An element or map lacks the definite Z2-parity an operation requires.
struct ParityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A serialized model or descriptor could not be read.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Construction produced something outside the claimed algebra (bracket not
/// closing, non-weight basis vector, ...). Indicates a bug or corrupted input.
struct StructureError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace cartansuper
