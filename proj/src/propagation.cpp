#include "cavq/propagation.hpp"

#include <cmath>
#include <stdexcept>

#include "cavq/eigh.hpp"
#include "cavq/kernels.hpp"

namespace cavq {

namespace {

void require_hermitian(const OperatorMatrix& h, const char* who) {
    const double scale = std::max(1.0, h.max_abs());
    if (h.hermiticity_error() > 1e-9 * scale)
        throw std::invalid_argument(std::string(who) + ": generator is not Hermitian");
}

}  // namespace

OperatorMatrix expm_hermitian(const OperatorMatrix& h, double t, double hbar) {
    if (hbar == 0.0) throw std::invalid_argument("expm_hermitian: hbar must be nonzero");
    require_hermitian(h, "expm_hermitian");
    const double w = t / hbar;
    return spectral_map(h, [w](double lam) {
        const double ph = -lam * w;
        return cd{std::cos(ph), std::sin(ph)};
    });
}

OperatorMatrix propagate_timedep(const HamiltonianSampler& h_of_t, double t0, double t1,
                                 std::size_t steps, double hbar) {
    if (steps < 1) throw std::invalid_argument("propagate_timedep: steps must be >= 1");
    if (hbar == 0.0) throw std::invalid_argument("propagate_timedep: hbar must be nonzero");
    const double dt = (t1 - t0) / static_cast<double>(steps);

    const OperatorMatrix h0 = h_of_t(t0 + 0.5 * dt);
    const std::size_t d = h0.dim();
    require_hermitian(h0, "propagate_timedep");

    OperatorMatrix u = expm_hermitian(h0, dt, hbar);
    std::vector<cd> scratch(d * d);
    for (std::size_t k = 1; k < steps; ++k) {
        const double tm = t0 + (static_cast<double>(k) + 0.5) * dt;
        const OperatorMatrix hk = h_of_t(tm);
        if (hk.dim() != d)
            throw std::invalid_argument("propagate_timedep: sampler dimension drift");
        require_hermitian(hk, "propagate_timedep");
        const OperatorMatrix uk = expm_hermitian(hk, dt, hbar);
        kern::matmul(uk.data().data(), d, u.data().data(), d, scratch.data(), d, d, d, d);
        std::copy(scratch.begin(), scratch.end(), u.data().begin());
    }
    return u;
}

}  // namespace cavq
