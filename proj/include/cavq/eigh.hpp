#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "cavq/operator.hpp"

namespace cavq {

struct EighResult {
    std::size_t n = 0;
    std::vector<double> eigenvalues;  // ascending
    std::vector<cd> vectors;          // row-major, column j is eigenvector j

    cd vector_entry(std::size_t i, std::size_t j) const { return vectors[i * n + j]; }
};

// Eigendecomposition of a Hermitian matrix: Householder reduction to real
// symmetric tridiagonal form followed by implicit-shift QL with eigenvector
// accumulation. Eigenvector columns are orthonormal to roundoff and
// renormalized before returning.
EighResult eigh(std::span<const cd> a, std::size_t n);
EighResult eigh(const OperatorMatrix& h);

// V f(lambda) V^dagger for Hermitian input.
OperatorMatrix spectral_map(const OperatorMatrix& h, const std::function<cd(double)>& f);

// Largest |eigenvalue| of a Hermitian matrix.
double spectral_norm_hermitian(const OperatorMatrix& h);

}  // namespace cavq
