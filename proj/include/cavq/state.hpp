#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include "cavq/layout.hpp"

namespace cavq {

using cd = std::complex<double>;

// Normalized amplitude vector over a SystemLayout.
class StateVector {
public:
    StateVector(SystemLayout layout, std::vector<cd> amplitudes);

    // Basis state from per-subsystem digits, in layout order.
    static StateVector basis(SystemLayout layout, std::span<const std::size_t> digits);
    static StateVector basis(SystemLayout layout, std::initializer_list<std::size_t> digits);
    // Basis state from a flat index.
    static StateVector basis_flat(SystemLayout layout, std::size_t index);
    // Normalizes the amplitudes instead of rejecting them.
    static StateVector normalized(SystemLayout layout, std::vector<cd> amplitudes);
    // Skips the norm check; for intermediate arithmetic such as unnormalized
    // projections. Physics operations always return normalized states.
    static StateVector unnormalized(SystemLayout layout, std::vector<cd> amplitudes);

    const SystemLayout& layout() const { return layout_; }
    std::size_t dim() const { return amp_.size(); }
    std::span<const cd> amplitudes() const { return amp_; }
    cd amplitude(std::size_t i) const { return amp_.at(i); }

    double norm() const;
    void normalize();

    cd& operator[](std::size_t i) { return amp_[i]; }
    const cd& operator[](std::size_t i) const { return amp_[i]; }

private:
    StateVector() = default;
    SystemLayout layout_;
    std::vector<cd> amp_;
};

// |<a|b>| — global-phase-insensitive state closeness.
double state_overlap(const StateVector& a, const StateVector& b);
cd inner(const StateVector& a, const StateVector& b);

}  // namespace cavq
