#pragma once

#include <span>
#include <vector>

#include "cavq/operator.hpp"
#include "cavq/rng.hpp"

namespace cavq {

struct MeasurementOutcome {
    std::size_t index;
    double probability;
    StateVector post;
};

// Validates that the projectors are Hermitian, idempotent and complete
// (all within 1e-10). Throws std::invalid_argument otherwise.
void validate_projectors(std::span<const OperatorMatrix> projectors);

// Born-rule sampling over a complete projector set; the post-state is the
// renormalized projection.
MeasurementOutcome measure(const StateVector& state, std::span<const OperatorMatrix> projectors,
                           Rng& rng);

// Deterministic variant: every outcome with probability > p_floor, in index
// order. Probabilities of the returned branches need not sum to 1 when some
// fall below the floor.
std::vector<MeasurementOutcome> enumerate_outcomes(const StateVector& state,
                                                   std::span<const OperatorMatrix> projectors,
                                                   double p_floor = 1e-12);

}  // namespace cavq
