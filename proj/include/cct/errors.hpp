#pragma once
#include <stdexcept>
#include <string>

namespace cct {

// Mismatched nvars/weights/order between operands.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operand outside an operation's domain (e.g. nonzero constant term in a
// substitution map, lambda = 0 in a dilation).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A substitution map component carries terms below the weight of its target
// variable, so truncated composition would not be exact.
struct DegreeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input jets do not carry enough Taylor data to determine the result to the
// requested truncation order.
struct OrderError : std::runtime_error {
    int required_order;
    OrderError(const std::string& msg, int required)
        : std::runtime_error(msg), required_order(required) {}
};

// Iterated brackets fail to span the tangent space at 0 within max_step.
struct HormanderError : std::runtime_error {
    int achieved_dim;
    HormanderError(const std::string& msg, int dim)
        : std::runtime_error(msg), achieved_dim(dim) {}
};

// A decomposition clause (i)-(iv) failed; the input was not genuinely in
// exponential coordinates (or is internally inconsistent).
struct DecompositionError : std::runtime_error {
    std::string clause;  // "(i)".."(iv)"
    DecompositionError(const std::string& msg, std::string cl)
        : std::runtime_error(msg), clause(std::move(cl)) {}
};

// Structural assumption violated at runtime (non-terminating Picard flow,
// corrupted bracket relations, ...).
struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A checked numerical postcondition (projection defect, escape box) failed.
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cct
