#include "cavq/dfs.hpp"

#include <cmath>
#include <stdexcept>

#include "cavq/propagation.hpp"

namespace cavq::dfs {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;

// 2x2 helpers on std::array<cd,4> (row-major).
using Mat2 = std::array<cd, 4>;

Mat2 mul2(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

double unitarity_error2(const Mat2& m) {
    const Mat2 mh{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
    const Mat2 p = mul2(mh, m);
    return std::max(std::max(std::abs(p[0] - cd{1, 0}), std::abs(p[3] - cd{1, 0})),
                    std::max(std::abs(p[1]), std::abs(p[2])));
}

std::size_t code_index_0(const SystemLayout& l) { return l.stride(1); }      // |01>
std::size_t code_index_1(const SystemLayout& l) { return l.stride(0); }      // |10>

}  // namespace

StateVector encode(cd alpha, cd zeta, const LogicalQubit& qubit) {
    const double n2 = std::norm(alpha) + std::norm(zeta);
    if (std::abs(n2 - 1.0) > 1e-12)
        throw std::invalid_argument("encode: logical amplitudes are not normalized");
    SystemLayout layout = qubit.pair_layout();
    std::vector<cd> amp(4, cd{0, 0});
    amp[code_index_0(layout)] = alpha;
    amp[code_index_1(layout)] = zeta;
    return StateVector{std::move(layout), std::move(amp)};
}

CodeProjection project_code(const StateVector& state, const LogicalQubit& qubit) {
    const SystemLayout layout = qubit.pair_layout();
    if (state.dim() != 4 || !(state.layout() == layout))
        throw std::invalid_argument("project_code: state is not on the qubit's pair layout");
    const cd a = state.amplitude(code_index_0(layout));
    const cd z = state.amplitude(code_index_1(layout));
    CodeProjection out;
    out.inside_weight = std::norm(a) + std::norm(z);
    if (out.inside_weight > 1.0 - 1e-9) out.amplitudes = std::make_pair(a, z);
    return out;
}

double pair_leakage(const StateVector& state, const LogicalQubit& qubit) {
    const SystemLayout& l = state.layout();
    const std::size_t ia = l.index_of(qubit.device_a);
    const std::size_t ib = l.index_of(qubit.device_b);
    double inside = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const std::size_t da = l.digit(i, ia);
        const std::size_t db = l.digit(i, ib);
        if (da != db) inside += std::norm(state.amplitude(i));
    }
    return 1.0 - inside;
}

OperatorMatrix logical_pauli(PauliAxis which, const LogicalQubit& qubit) {
    const OperatorMatrix sxa = pauli(PauliAxis::X, qubit.device_a);
    const OperatorMatrix sxb = pauli(PauliAxis::X, qubit.device_b);
    switch (which) {
        case PauliAxis::X:
            return kron(sxa, sxb);
        case PauliAxis::Z:
            return kron(pauli(PauliAxis::Z, qubit.device_a), identity_op(qubit.device_b, 2));
        case PauliAxis::Y:
            return kron(pauli(PauliAxis::Y, qubit.device_a), sxb);
    }
    throw std::invalid_argument("unknown logical Pauli");
}

OperatorMatrix collective_dephasing(double phi, std::size_t n_devices) {
    if (n_devices < 1) throw std::invalid_argument("collective_dephasing: need devices");
    std::vector<Subsystem> subs;
    for (std::size_t j = 0; j < n_devices; ++j)
        subs.push_back({"d" + std::to_string(j), 2});
    SystemLayout layout{std::move(subs)};
    const std::size_t d = layout.total_dim();
    std::vector<cd> m(d * d, cd{0, 0});
    for (std::size_t i = 0; i < d; ++i) {
        // J_z eigenvalue: +1 per |0>, -1 per |1>
        int jz = 0;
        for (std::size_t s = 0; s < n_devices; ++s)
            jz += layout.digit(i, s) == 0 ? 1 : -1;
        m[i * d + i] = std::polar(1.0, -phi * 0.5 * static_cast<double>(jz));
    }
    return OperatorMatrix{std::move(layout), std::move(m), false};
}

OperatorMatrix ux_gate(double gamma, const LogicalQubit& qubit) {
    OperatorMatrix gen = logical_pauli(PauliAxis::X, qubit);
    gen += OperatorMatrix::identity(qubit.pair_layout());
    gen *= cd{2.0, 0.0};
    return expm_hermitian(gen, gamma, 1.0);  // exp(-2i gamma (1 + sx sx))
}

OperatorMatrix uy_gate(double gamma, const LogicalQubit& qubit) {
    OperatorMatrix gen =
        kron(pauli(PauliAxis::X, qubit.device_a), pauli(PauliAxis::Y, qubit.device_b));
    gen *= cd{2.0, 0.0};
    OperatorMatrix h{gen.layout(), std::vector<cd>(gen.data().begin(), gen.data().end()), true};
    return expm_hermitian(h, gamma, 1.0);  // exp(-2i gamma sx sy)
}

std::array<cd, 4> restrict_to_code(const OperatorMatrix& op, const LogicalQubit& qubit) {
    const SystemLayout layout = qubit.pair_layout();
    if (op.dim() != 4) throw std::invalid_argument("restrict_to_code: expected a pair operator");
    const std::size_t i0 = code_index_0(layout);
    const std::size_t i1 = code_index_1(layout);
    return {op.at(i0, i0), op.at(i0, i1), op.at(i1, i0), op.at(i1, i1)};
}

std::vector<Rotation> synthesize_logical(const std::array<cd, 4>& target,
                                         const LogicalQubit& qubit) {
    if (unitarity_error2(target) > 1e-10)
        throw std::invalid_argument("synthesize_logical: target is not unitary");

    // Normalize to det = 1.
    const cd det = target[0] * target[3] - target[1] * target[2];
    const cd scale = cd{1.0, 0.0} / std::sqrt(det);
    Mat2 t{target[0] * scale, target[1] * scale, target[2] * scale, target[3] * scale};

    // Conjugate by H so the X-Y-X problem becomes a Z-Y-Z one:
    //   T = R_x(psi) R_y(-theta) R_x(lam)  <=>  H T H = R_z(psi) R_y(theta) R_z(lam).
    const double s = 1.0 / std::sqrt(2.0);
    const Mat2 hm{cd{s, 0}, cd{s, 0}, cd{s, 0}, cd{-s, 0}};
    const Mat2 v = mul2(hm, mul2(t, hm));

    // ZYZ angles of the special unitary v.
    const double c_half = std::abs(v[0]);
    const double s_half = std::abs(v[2]);
    const double theta = 2.0 * std::atan2(s_half, c_half);
    double psi = 0.0;
    double lam = 0.0;
    if (s_half < 1e-12) {
        psi = 2.0 * std::arg(v[3]);
    } else if (c_half < 1e-12) {
        psi = 2.0 * std::arg(v[2]);
    } else {
        const double sum = 2.0 * std::arg(v[3]);   // psi + lam
        const double diff = 2.0 * std::arg(v[2]);  // psi - lam
        psi = 0.5 * (sum + diff);
        lam = 0.5 * (sum - diff);
    }

    // Gate angles: R_x(angle) = exp(-2i gamma X) at gamma = angle/4; the
    // realized Y generator is the sx sy restriction (= -Y of the X,Z frame),
    // so exp(-2i gamma_y *) produces R_y(-4 gamma_y) and gamma_y = theta/4.
    auto norm_gamma = [](double gamma) {
        double g = std::fmod(gamma, kPi);
        if (g < 0) g += kPi;
        if (g > kPi - 1e-13 || g < 1e-13) g = 0.0;
        return g;
    };

    std::vector<Rotation> seq;
    const double g1 = norm_gamma(lam / 4.0);
    const double g2 = norm_gamma(theta / 4.0);
    const double g3 = norm_gamma(psi / 4.0);
    if (g1 != 0.0) seq.push_back({RotationAxis::X, g1});
    if (g2 != 0.0) seq.push_back({RotationAxis::Y, g2});
    if (g3 != 0.0) seq.push_back({RotationAxis::X, g3});
    (void)qubit;
    return seq;
}

OperatorMatrix compose_rotations(std::span<const Rotation> rotations, const LogicalQubit& qubit) {
    OperatorMatrix u = OperatorMatrix::identity(qubit.pair_layout());
    for (const Rotation& r : rotations) {
        const OperatorMatrix g =
            r.axis == RotationAxis::X ? ux_gate(r.gamma, qubit) : uy_gate(r.gamma, qubit);
        u = g * u;
    }
    return u;
}

std::array<cd, 4> preset_target(std::string_view name) {
    const double s = 1.0 / std::sqrt(2.0);
    if (name == "i") return {cd{1, 0}, cd{0, 0}, cd{0, 0}, cd{1, 0}};
    if (name == "x") return {cd{0, 0}, cd{1, 0}, cd{1, 0}, cd{0, 0}};
    if (name == "y") return {cd{0, 0}, cd{0, -1}, cd{0, 1}, cd{0, 0}};
    if (name == "z") return {cd{1, 0}, cd{0, 0}, cd{0, 0}, cd{-1, 0}};
    if (name == "h") return {cd{s, 0}, cd{s, 0}, cd{s, 0}, cd{-s, 0}};
    if (name == "s") return {cd{1, 0}, cd{0, 0}, cd{0, 0}, cd{0, 1}};
    throw std::invalid_argument("unknown preset target: " + std::string(name));
}

OperatorMatrix logical_hadamard(const LogicalQubit& qubit) {
    const auto seq = synthesize_logical(preset_target("h"), qubit);
    return compose_rotations(seq, qubit);
}

}  // namespace cavq::dfs
