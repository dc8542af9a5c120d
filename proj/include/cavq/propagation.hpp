#pragma once

#include <functional>

#include "cavq/operator.hpp"

namespace cavq {

// U = exp(-i h t / hbar) via eigendecomposition of the Hermitian generator.
// Throws std::invalid_argument if h is not Hermitian within tolerance.
OperatorMatrix expm_hermitian(const OperatorMatrix& h, double t, double hbar = 1.0);

using HamiltonianSampler = std::function<OperatorMatrix(double)>;

// Time-ordered propagator over [t0, t1] by midpoint-exponential stepping
// (second-order Magnus): U = prod_k exp(-i H(t_k + dt/2) dt / hbar).
// Every sample must be Hermitian and of fixed dimension.
OperatorMatrix propagate_timedep(const HamiltonianSampler& h_of_t, double t0, double t1,
                                 std::size_t steps, double hbar = 1.0);

}  // namespace cavq
