#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "cavq/layout.hpp"
#include "cavq/state.hpp"

namespace cavq {

// Dense complex square matrix acting on a composite space, row-major.
class OperatorMatrix {
public:
    OperatorMatrix(SystemLayout layout, std::vector<cd> entries, bool hermitian_hint = false);

    static OperatorMatrix identity(SystemLayout layout);
    static OperatorMatrix zero(SystemLayout layout);

    const SystemLayout& layout() const { return layout_; }
    std::size_t dim() const { return dim_; }
    bool hermitian_hint() const { return hermitian_hint_; }

    cd at(std::size_t i, std::size_t j) const { return m_[i * dim_ + j]; }
    cd& at(std::size_t i, std::size_t j) { return m_[i * dim_ + j]; }
    std::span<const cd> data() const { return m_; }
    std::span<cd> data() { return m_; }

    OperatorMatrix adjoint() const;
    // max_ij |A_ij - conj(A_ji)|
    double hermiticity_error() const;
    // max_ij |(A^dagger A - I)_ij|
    double unitarity_error() const;
    double max_abs() const;

    OperatorMatrix& operator+=(const OperatorMatrix& rhs);
    OperatorMatrix& operator-=(const OperatorMatrix& rhs);
    OperatorMatrix& operator*=(cd scale);

    friend OperatorMatrix operator+(OperatorMatrix lhs, const OperatorMatrix& rhs) {
        lhs += rhs;
        return lhs;
    }
    friend OperatorMatrix operator-(OperatorMatrix lhs, const OperatorMatrix& rhs) {
        lhs -= rhs;
        return lhs;
    }
    friend OperatorMatrix operator*(cd scale, OperatorMatrix rhs) {
        rhs *= scale;
        return rhs;
    }
    // Matrix product; layouts must match.
    friend OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

private:
    SystemLayout layout_;
    std::vector<cd> m_;
    std::size_t dim_ = 0;
    bool hermitian_hint_ = false;
};

// Tensor product; resulting layout is the concatenation of both layouts.
OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b);

// Lift `op` (given on the listed target subsystems, in that order) into
// `layout`, acting as the identity elsewhere. Targets may appear anywhere
// in the layout and in any order.
OperatorMatrix embed(const OperatorMatrix& op, const SystemLayout& layout,
                     std::span<const std::string> targets);
OperatorMatrix embed(const OperatorMatrix& op, const SystemLayout& layout,
                     std::initializer_list<std::string> targets);

// op |psi>, optionally renormalized (for unitary ops the norm is preserved
// up to roundoff either way).
StateVector apply(const OperatorMatrix& op, const StateVector& psi, bool renormalize = true);

cd expectation(const StateVector& psi, const OperatorMatrix& op);

// |tr(U^dagger V)| / d — global-phase-insensitive operator closeness.
double trace_overlap(const OperatorMatrix& u, const OperatorMatrix& v);

// Trace out one subsystem of an operator.
OperatorMatrix partial_trace(const OperatorMatrix& op, std::string_view traced_label);

// Reduced density matrix of |psi><psi| on the listed subsystems (kept in
// the order they appear in the state's layout).
OperatorMatrix reduced_density(const StateVector& psi, std::span<const std::string> keep);
OperatorMatrix reduced_density(const StateVector& psi, std::initializer_list<std::string> keep);

double purity(const OperatorMatrix& rho);

// max over unitaries W of |tr((W (x) I_sub)^dagger U)| / d, i.e. how close U is
// to a product (rest) (x) I on the named subsystem. Equals the nuclear norm of
// the partial trace over that subsystem divided by the total dimension.
double factorization_overlap(const OperatorMatrix& u, std::string_view product_label);

// <out_digit| U |in_digit> block on the named subsystem, acting on the
// remaining layout.
OperatorMatrix subsystem_block(const OperatorMatrix& u, std::string_view label,
                               std::size_t in_digit, std::size_t out_digit);

// Nuclear norm of <digit| U |digit> divided by the remaining dimension:
// 1 exactly when the sector maps to itself by (unitary) (x) (subsystem kept
// in |digit>). Probes factorization on the sector actually prepared, so
// Fock-ladder truncation at the top does not pollute the metric.
double sector_factorization_overlap(const OperatorMatrix& u, std::string_view label,
                                    std::size_t digit = 0);

}  // namespace cavq
