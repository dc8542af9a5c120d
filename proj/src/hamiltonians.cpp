#include "cavq/hamiltonians.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "cavq/eigh.hpp"
#include "cavq/propagation.hpp"

namespace cavq::ham {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Distance of x from the nearest multiple of `period`.
double mod_distance(double x, double period) {
    const double r = std::remainder(x, period);
    return std::abs(r);
}

std::string device_label(std::size_t j) { return "d" + std::to_string(j); }

void check_homogeneous(std::span<const FluxConfig> cfgs) {
    if (cfgs.empty()) throw std::invalid_argument("at least one device config required");
    const FluxConfig& ref = cfgs.front();
    for (const FluxConfig& c : cfgs) {
        const bool ok = std::abs(c.e_j - ref.e_j) <= 1e-12 * std::max(1.0, std::abs(ref.e_j)) &&
                        std::abs(c.g - ref.g) <= 1e-12 * std::max(1.0, std::abs(ref.g)) &&
                        std::abs(c.omega - ref.omega) <= 1e-12 * std::max(1.0, std::abs(ref.omega));
        if (!ok)
            throw std::invalid_argument(
                "multi-device builders require devices sharing e_j, g and omega");
    }
}

}  // namespace

CouplingAxis FluxConfig::coupling_axis() const {
    const double tol = 1e-9;
    const bool p1_whole = mod_distance(phi1, M_PI) < tol;
    const bool p3_whole = mod_distance(phi3, M_PI) < tol;
    if (p1_whole && p3_whole) {
        if (mod_distance(phi1 - phi3, kTwoPi) < tol) return CouplingAxis::X;
        if (mod_distance(phi1 - phi3 - M_PI, kTwoPi) < tol) return CouplingAxis::Y;
    }
    return CouplingAxis::None;
}

EffectiveParams EffectiveParams::from_config(const FluxConfig& cfg) {
    EffectiveParams p;
    p.beta = cfg.g * cfg.e_j / cfg.hbar;
    p.delta = cfg.omega - cfg.omega_c;
    p.chi = (p.delta != 0.0) ? p.beta * p.beta / p.delta : 0.0;
    return p;
}

SystemLayout device_layout(std::size_t n_devices) {
    std::vector<Subsystem> subs;
    for (std::size_t j = 0; j < n_devices; ++j) subs.push_back({device_label(j), 2});
    return SystemLayout{std::move(subs)};
}

SystemLayout device_cavity_layout(std::size_t n_devices, std::size_t n_max) {
    std::vector<Subsystem> subs;
    for (std::size_t j = 0; j < n_devices; ++j) subs.push_back({device_label(j), 2});
    subs.push_back({"cav", n_max + 1});
    return SystemLayout{std::move(subs)};
}

OperatorMatrix device_hamiltonian(const FluxConfig& cfg) {
    OperatorMatrix h = pauli(PauliAxis::Z);
    h *= cd{-cfg.e_ce(), 0.0};
    OperatorMatrix hx = pauli(PauliAxis::X);
    hx *= cd{-cfg.e_phi(), 0.0};
    h += hx;
    return h;
}

OperatorMatrix cavity_cos_operator(double phi2, double g, std::size_t n_max) {
    if (n_max < 1) throw std::invalid_argument("cavity_cos_operator: n_max must be >= 1");
    OperatorMatrix arg = quadrature_x(n_max);
    arg *= cd{g, 0.0};
    OperatorMatrix ph = identity_op("cav", n_max + 1);
    ph *= cd{phi2, 0.0};
    arg += ph;
    return spectral_map(arg, [](double lam) { return cd{std::cos(lam), 0.0}; });
}

OperatorMatrix device_cavity_exact(const FluxConfig& cfg, std::size_t n_max) {
    if (n_max < 1) throw std::invalid_argument("device_cavity_exact: n_max must be >= 1");
    if (std::abs(cfg.phi1) > 1e-9 || std::abs(cfg.phi3) > 1e-9)
        throw std::invalid_argument("device_cavity_exact: requires phi1 = phi3 = 0");
    const OperatorMatrix icav = identity_op("cav", n_max + 1);
    OperatorMatrix h = kron(pauli(PauliAxis::Z), icav);
    h *= cd{-cfg.e_ce(), 0.0};
    OperatorMatrix coupling = kron(pauli(PauliAxis::X), cavity_cos_operator(cfg.phi2, cfg.g, n_max));
    coupling *= cd{-2.0 * cfg.e_j, 0.0};
    h += coupling;
    return h;
}

OperatorMatrix lambdicke_hamiltonian(const FluxConfig& cfg, std::size_t n_max) {
    if (n_max < 1) throw std::invalid_argument("lambdicke_hamiltonian: n_max must be >= 1");
    const OperatorMatrix icav = identity_op("cav", n_max + 1);
    OperatorMatrix h = kron(device_hamiltonian(cfg), icav);
    OperatorMatrix coupling = kron(pauli(PauliAxis::X), quadrature_x(n_max));
    coupling *= cd{2.0 * cfg.g * cfg.e_j * std::sin(cfg.phi2), 0.0};
    h += coupling;
    return h;
}

OperatorMatrix multidevice_lab_hamiltonian(std::span<const FluxConfig> cfgs, double t,
                                           std::size_t n_max) {
    if (n_max < 1) throw std::invalid_argument("multidevice_lab_hamiltonian: n_max must be >= 1");
    check_homogeneous(cfgs);
    static bool warned = false;
    for (const FluxConfig& c : cfgs) {
        if (!c.at_degeneracy() && !warned) {
            std::cerr << "cavq: multidevice_lab_hamiltonian assumes degeneracy-point operation; "
                         "nonzero E_ce terms are dropped\n";
            warned = true;
        }
    }

    const std::size_t n = cfgs.size();
    const SystemLayout layout = device_cavity_layout(n, n_max);
    const double g = cfgs.front().g;
    const double e_j = cfgs.front().e_j;
    const double omega = cfgs.front().omega;
    const double c2 = std::cos(omega * t);
    const double s2 = std::sin(omega * t);

    const OperatorMatrix xq = quadrature_x(n_max);
    const OperatorMatrix icav = identity_op("cav", n_max + 1);

    OperatorMatrix h = OperatorMatrix::zero(layout);
    for (std::size_t j = 0; j < n; ++j) {
        const FluxConfig& c = cfgs[j];
        const double c1 = std::cos(c.phi1);
        const double c3 = std::cos(c.phi3);
        const double s1 = std::sin(c.phi1);
        const double s3 = std::sin(c.phi3);

        // cavity factor multiplying cos(phi_j) -> sigma_x/2
        OperatorMatrix fx = icav;
        fx *= cd{(c1 + c3) * c2, 0.0};
        OperatorMatrix fx_x = xq;
        fx_x *= cd{g * ((c1 + c3) * s2 + (s1 + s3) * c2), 0.0};
        fx += fx_x;

        // cavity factor multiplying sin(phi_j) -> sigma_y/2
        OperatorMatrix fy = icav;
        fy *= cd{(c1 - c3) * s2, 0.0};
        OperatorMatrix fy_x = xq;
        fy_x *= cd{g * ((c1 - c3) * c2 + (s1 - s3) * s2), 0.0};
        fy += fy_x;

        OperatorMatrix term = kron(pauli(PauliAxis::X, device_label(j)), fx);
        term += kron(pauli(PauliAxis::Y, device_label(j)), fy);
        term *= cd{-e_j, 0.0};  // -2 E_J times the 1/2 from cos/sin -> sigma/2
        h += embed(term, layout, {device_label(j), "cav"});
    }
    return h;
}

OperatorMatrix cavity_free_hamiltonian(std::size_t n_devices, std::size_t n_max, double omega_c,
                                       double hbar) {
    const SystemLayout layout = device_cavity_layout(n_devices, n_max);
    OperatorMatrix num = number_op(n_max);
    OperatorMatrix half = identity_op("cav", n_max + 1);
    half *= cd{0.5, 0.0};
    num += half;
    num *= cd{hbar * omega_c, 0.0};
    return embed(num, layout, {"cav"});
}

OperatorMatrix rwa_hamiltonian(std::span<const FluxConfig> cfgs, double t,
                               const EffectiveParams& params, std::size_t n_max) {
    if (n_max < 1) throw std::invalid_argument("rwa_hamiltonian: n_max must be >= 1");
    check_homogeneous(cfgs);
    if (params.delta <= 0.0)
        throw std::invalid_argument("rwa_hamiltonian: requires 0 < delta = omega - omega_c");
    for (const FluxConfig& c : cfgs)
        if (c.coupling_axis() == CouplingAxis::None)
            throw std::invalid_argument(
                "rwa_hamiltonian: device flux is neither an X nor a Y configuration");

    const std::size_t n = cfgs.size();
    const SystemLayout layout = device_cavity_layout(n, n_max);
    const double hbar = cfgs.front().hbar;
    const double hb2 = hbar * params.beta / 2.0;

    const OperatorMatrix a = annihilation(n_max);
    const OperatorMatrix adag = a.adjoint();
    const cd eplus = std::polar(1.0, params.delta * t);   // e^{+i delta t}
    const cd eminus = std::polar(1.0, -params.delta * t); // e^{-i delta t}

    // a e^{+i delta t} -+ a^dag e^{-i delta t}
    OperatorMatrix qminus = a;
    qminus *= eplus;
    {
        OperatorMatrix tmp = adag;
        tmp *= -eminus;
        qminus += tmp;
    }
    OperatorMatrix qplus = a;
    qplus *= eplus;
    {
        OperatorMatrix tmp = adag;
        tmp *= eminus;
        qplus += tmp;
    }

    OperatorMatrix h = OperatorMatrix::zero(layout);
    for (std::size_t j = 0; j < n; ++j) {
        const FluxConfig& c = cfgs[j];
        const double cp = std::cos(c.phi1) + std::cos(c.phi3);
        const double cm = std::cos(c.phi1) - std::cos(c.phi3);
        const double sp = std::sin(c.phi1) + std::sin(c.phi3);
        const double sm = std::sin(c.phi1) - std::sin(c.phi3);

        // minus the interaction-picture expansion, so that phi1 = phi3 = 0
        // lands on i hbar beta (a^dag e^{-i delta t} - a e^{i delta t}) sigma_x
        OperatorMatrix fx = qminus;
        fx *= cd{0.0, -cp};
        {
            OperatorMatrix tmp = qplus;
            tmp *= cd{sp, 0.0};
            fx += tmp;
        }
        OperatorMatrix fy = qplus;
        fy *= cd{cm, 0.0};
        {
            OperatorMatrix tmp = qminus;
            tmp *= cd{0.0, -sm};
            fy += tmp;
        }

        OperatorMatrix term = kron(pauli(PauliAxis::X, device_label(j)), fx);
        term += kron(pauli(PauliAxis::Y, device_label(j)), fy);
        term *= cd{hb2, 0.0};
        h += embed(term, layout, {device_label(j), "cav"});
    }
    return h;
}

OperatorMatrix collective_op(PauliAxis axis, std::size_t n_devices) {
    if (n_devices < 1) throw std::invalid_argument("collective_op: n_devices must be >= 1");
    const SystemLayout layout = device_layout(n_devices);
    OperatorMatrix j = OperatorMatrix::zero(layout);
    for (std::size_t k = 0; k < n_devices; ++k)
        j += embed(pauli(axis, device_label(k)), layout, {device_label(k)});
    return j;
}

OperatorMatrix effective_hamiltonian(PauliAxis axis, std::size_t n_devices, double chi,
                                     double hbar) {
    OperatorMatrix j = collective_op(axis, n_devices);
    OperatorMatrix j2 = j * j;
    j2 *= cd{hbar * chi, 0.0};
    return OperatorMatrix{j2.layout(), std::vector<cd>(j2.data().begin(), j2.data().end()), true};
}

OperatorMatrix effective_propagator(PauliAxis axis, std::size_t n_devices, double chi, double t,
                                    double hbar) {
    // exp(i phi_g J^2) with phi_g = kGeometricPhaseSign * chi * t equals
    // exp(-i (hbar chi J^2) t / hbar) for the pinned sign.
    const OperatorMatrix h = effective_hamiltonian(axis, n_devices, chi, hbar);
    return expm_hermitian(h, -kGeometricPhaseSign * t, hbar);
}

}  // namespace cavq::ham
