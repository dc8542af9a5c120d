#include "cavq/state.hpp"

#include <cmath>
#include <stdexcept>

#include "cavq/kernels.hpp"

namespace cavq {

StateVector::StateVector(SystemLayout layout, std::vector<cd> amplitudes)
    : layout_(std::move(layout)), amp_(std::move(amplitudes)) {
    if (amp_.size() != layout_.total_dim())
        throw std::invalid_argument("amplitude count does not match layout dimension");
    if (std::abs(norm() - 1.0) > 1e-12)
        throw std::invalid_argument("state vector is not normalized");
}

StateVector StateVector::basis(SystemLayout layout, std::span<const std::size_t> digits) {
    if (digits.size() != layout.subsystem_count())
        throw std::invalid_argument("digit count does not match subsystem count");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] >= layout.subsystem(i).dim)
            throw std::invalid_argument("basis digit out of range for " + layout.subsystem(i).label);
        flat += digits[i] * layout.stride(i);
    }
    return basis_flat(std::move(layout), flat);
}

StateVector StateVector::basis(SystemLayout layout, std::initializer_list<std::size_t> digits) {
    return basis(std::move(layout), std::span<const std::size_t>(digits.begin(), digits.size()));
}

StateVector StateVector::basis_flat(SystemLayout layout, std::size_t index) {
    if (index >= layout.total_dim()) throw std::invalid_argument("basis index out of range");
    std::vector<cd> amp(layout.total_dim(), cd{0.0, 0.0});
    amp[index] = cd{1.0, 0.0};
    return StateVector{std::move(layout), std::move(amp)};
}

StateVector StateVector::normalized(SystemLayout layout, std::vector<cd> amplitudes) {
    if (amplitudes.size() != layout.total_dim())
        throw std::invalid_argument("amplitude count does not match layout dimension");
    const double n2 = kern::nrm2sq(amplitudes.data(), amplitudes.size());
    if (n2 <= 0.0) throw std::invalid_argument("cannot normalize the zero vector");
    kern::scal(cd{1.0 / std::sqrt(n2), 0.0}, amplitudes.data(), amplitudes.size());
    StateVector s;
    s.layout_ = std::move(layout);
    s.amp_ = std::move(amplitudes);
    return s;
}

StateVector StateVector::unnormalized(SystemLayout layout, std::vector<cd> amplitudes) {
    if (amplitudes.size() != layout.total_dim())
        throw std::invalid_argument("amplitude count does not match layout dimension");
    StateVector s;
    s.layout_ = std::move(layout);
    s.amp_ = std::move(amplitudes);
    return s;
}

double StateVector::norm() const { return std::sqrt(kern::nrm2sq(amp_.data(), amp_.size())); }

void StateVector::normalize() {
    const double n = norm();
    if (n <= 0.0) throw std::logic_error("cannot normalize the zero vector");
    kern::scal(cd{1.0 / n, 0.0}, amp_.data(), amp_.size());
}

cd inner(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("state dimensions differ");
    return kern::dotc(a.amplitudes().data(), b.amplitudes().data(), a.dim());
}

double state_overlap(const StateVector& a, const StateVector& b) {
    return std::abs(inner(a, b));
}

}  // namespace cavq
