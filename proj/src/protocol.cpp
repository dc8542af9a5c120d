#include "cavq/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cavq::proto {

namespace {

const char* kC1 = "c1";
const char* kC2 = "c2";
const char* kAux = "aux";
const char* kT1 = "t1";
const char* kT2 = "t2";

// Flat index for (control logical bit c, aux bit a, target logical bit t)
// in the 32-dim layout: code words are |cL> = |c, 1-c> on (c1, c2).
std::size_t code_flat(const SystemLayout& l, int c, int a, int t) {
    return static_cast<std::size_t>(c) * l.stride(0) +
           static_cast<std::size_t>(1 - c) * l.stride(1) +
           static_cast<std::size_t>(a) * l.stride(2) +
           static_cast<std::size_t>(t) * l.stride(3) +
           static_cast<std::size_t>(1 - t) * l.stride(4);
}

void check_inputs(const CnotInputs& in) {
    if (std::abs(std::norm(in.alpha) + std::norm(in.zeta) - 1.0) > 1e-12 ||
        std::abs(std::norm(in.xi) + std::norm(in.tau) - 1.0) > 1e-12)
        throw std::invalid_argument("cnot inputs: amplitude pairs must be normalized");
}

// Meter used in physical mode; outcome statistics do not depend on the
// current values as long as the meter is armed.
meter::MeterConfig physical_meter() {
    return meter::MeterConfig::armed(1.0, 1.0, 10.0, meter::ReadoutBasis::ZeroOne);
}

struct Gates {
    OperatorMatrix h_aux;
    OperatorMatrix h_target;
    OperatorMatrix z_control;
    OperatorMatrix x_target;
};

const Gates& gates() {
    static const Gates g = [] {
        const SystemLayout l = cnot_layout();
        const dfs::LogicalQubit tq = target_qubit();
        const dfs::LogicalQubit cq = control_qubit();
        return Gates{embed(hadamard(kAux), l, {kAux}),
                     embed(dfs::logical_hadamard(tq), l, {kT1, kT2}),
                     embed(dfs::logical_pauli(PauliAxis::Z, cq), l, {kC1, kC2}),
                     embed(dfs::logical_pauli(PauliAxis::X, tq), l, {kT1, kT2})};
    }();
    return g;
}

std::vector<meter::MeterResult> parity_branches(const StateVector& s, const char* dev,
                                                MeterMode mode, double p_floor) {
    if (mode == MeterMode::Ideal)
        return meter::ideal_parity_enumerate(s, kAux, dev, meter::ReadoutBasis::ZeroOne, p_floor);
    return meter::three_outcome_enumerate(s, kAux, dev, physical_meter(), p_floor);
}

}  // namespace

std::pair<GateOnC, GateOnT> correction_lookup(int p1, int p2, int m) {
    if ((p1 | p2 | m) < 0 || p1 > 1 || p2 > 1 || m > 1)
        throw std::invalid_argument("correction_lookup: arguments must be 0 or 1");
    // Verbatim eight-row table; "0" odd parity, "1" even parity.
    static constexpr GateOnC gc[2][2][2] = {
        //            m=0        m=1
        {{GateOnC::Z, GateOnC::Z},   // p1=0, p2=0
         {GateOnC::I, GateOnC::I}},  // p1=0, p2=1
        {{GateOnC::Z, GateOnC::Z},   // p1=1, p2=0
         {GateOnC::I, GateOnC::I}},  // p1=1, p2=1
    };
    static constexpr GateOnT gt[2][2][2] = {
        {{GateOnT::X, GateOnT::I},   // p1=0, p2=0
         {GateOnT::X, GateOnT::I}},  // p1=0, p2=1
        {{GateOnT::I, GateOnT::X},   // p1=1, p2=0
         {GateOnT::I, GateOnT::X}},  // p1=1, p2=1
    };
    return {gc[p1][p2][m], gt[p1][p2][m]};
}

SystemLayout cnot_layout() {
    return SystemLayout{{Subsystem{kC1, 2}, Subsystem{kC2, 2}, Subsystem{kAux, 2},
                         Subsystem{kT1, 2}, Subsystem{kT2, 2}}};
}

dfs::LogicalQubit control_qubit() { return {kC1, kC2}; }
dfs::LogicalQubit target_qubit() { return {kT1, kT2}; }

StateVector initial_state(const CnotInputs& in) {
    check_inputs(in);
    SystemLayout l = cnot_layout();
    std::vector<cd> amp(l.total_dim(), cd{0, 0});
    const cd camp[2] = {in.alpha, in.zeta};
    const cd tamp[2] = {in.xi, in.tau};
    for (int c = 0; c < 2; ++c)
        for (int t = 0; t < 2; ++t) amp[code_flat(l, c, 0, t)] = camp[c] * tamp[t];
    return StateVector{std::move(l), std::move(amp)};
}

StateVector ideal_cnot_image(const CnotInputs& in, int m) {
    check_inputs(in);
    SystemLayout l = cnot_layout();
    std::vector<cd> amp(l.total_dim(), cd{0, 0});
    const cd tamp[2] = {in.xi, in.tau};
    for (int t = 0; t < 2; ++t) {
        amp[code_flat(l, 0, m, t)] = in.alpha * tamp[t];
        amp[code_flat(l, 1, m, 1 - t)] = in.zeta * tamp[t];
    }
    return StateVector{std::move(l), std::move(amp)};
}

std::vector<BranchRecord> run_cnot_enumerate(const CnotInputs& in, MeterMode mode,
                                             double p_floor) {
    check_inputs(in);
    const Gates& g = gates();
    const StateVector point0 = initial_state(in);
    const StateVector s1 = apply(g.h_aux, point0);

    std::vector<BranchRecord> out;
    for (const meter::MeterResult& r1 : parity_branches(s1, kC1, mode, p_floor)) {
        const StateVector point1 = r1.post;
        const StateVector s2 = apply(g.h_aux, apply(g.h_target, point1));
        for (const meter::MeterResult& r2 : parity_branches(s2, kT1, mode, p_floor)) {
            const StateVector s3 = apply(g.h_aux, apply(g.h_target, r2.post));
            const StateVector point2 = s3;
            for (const meter::SingleDeviceResult& rm :
                 meter::single_device_enumerate(s3, kAux, meter::ReadoutBasis::ZeroOne, p_floor)) {
                const StateVector point3 = rm.post;
                const auto [gc, gt] =
                    correction_lookup(r1.outcome.parity_bit(), r2.outcome.parity_bit(), rm.outcome);
                StateVector fin = point3;
                if (gc == GateOnC::Z) fin = apply(g.z_control, fin);
                if (gt == GateOnT::X) fin = apply(g.x_target, fin);
                BranchRecord rec{r1.outcome,
                                 r2.outcome,
                                 rm.outcome,
                                 r1.probability * r2.probability * rm.probability,
                                 gc,
                                 gt,
                                 std::move(fin),
                                 {point0, point1, point2, point3}};
                out.push_back(std::move(rec));
            }
        }
    }
    return out;
}

BranchRecord run_cnot_sampled(const CnotInputs& in, MeterMode mode, Rng& rng) {
    check_inputs(in);
    const Gates& g = gates();
    const StateVector point0 = initial_state(in);
    const StateVector s1 = apply(g.h_aux, point0);

    const meter::MeterResult r1 =
        mode == MeterMode::Ideal
            ? meter::ideal_parity_channel(s1, kAux, kC1, meter::ReadoutBasis::ZeroOne, rng)
            : meter::three_outcome_meter(s1, kAux, kC1, physical_meter(), rng);
    const StateVector point1 = r1.post;
    const StateVector s2 = apply(g.h_aux, apply(g.h_target, point1));
    const meter::MeterResult r2 =
        mode == MeterMode::Ideal
            ? meter::ideal_parity_channel(s2, kAux, kT1, meter::ReadoutBasis::ZeroOne, rng)
            : meter::three_outcome_meter(s2, kAux, kT1, physical_meter(), rng);
    const StateVector s3 = apply(g.h_aux, apply(g.h_target, r2.post));
    const meter::SingleDeviceResult rm =
        meter::single_device_measure(s3, kAux, meter::ReadoutBasis::ZeroOne, rng);
    const StateVector point3 = rm.post;
    const auto [gc, gt] =
        correction_lookup(r1.outcome.parity_bit(), r2.outcome.parity_bit(), rm.outcome);
    StateVector fin = point3;
    if (gc == GateOnC::Z) fin = apply(g.z_control, fin);
    if (gt == GateOnT::X) fin = apply(g.x_target, fin);
    return BranchRecord{r1.outcome,
                        r2.outcome,
                        rm.outcome,
                        r1.probability * r2.probability * rm.probability,
                        gc,
                        gt,
                        std::move(fin),
                        {point0, point1, s3, point3}};
}

double branch_fidelity(const BranchRecord& branch, const CnotInputs& in) {
    const double ov = state_overlap(ideal_cnot_image(in, branch.m), branch.final_state);
    return ov * ov;
}

StateVector contract_aux(const StateVector& state, int m) {
    const SystemLayout& l = state.layout();
    const std::size_t apos = l.index_of(kAux);
    std::vector<Subsystem> subs;
    for (std::size_t i = 0; i < l.subsystem_count(); ++i)
        if (i != apos) subs.push_back(l.subsystem(i));
    SystemLayout red{std::move(subs)};
    std::vector<cd> amp(red.total_dim());
    std::size_t w = 0;
    for (std::size_t i = 0; i < state.dim(); ++i)
        if (l.digit(i, apos) == static_cast<std::size_t>(m)) amp[w++] = state.amplitude(i);
    return StateVector::normalized(std::move(red), std::move(amp));
}

double IntermediateReport::min_overlap() const {
    return *std::min_element(overlaps.begin(), overlaps.end());
}

namespace {

// Amplitudes over the 8-dim no-leakage frame psi[c][a][t]; every protocol
// step is plain index algebra here, independent of the operator machinery.
struct Frame {
    std::array<cd, 8> v{};
    static int idx(int c, int a, int t) { return c * 4 + a * 2 + t; }
    cd& at(int c, int a, int t) { return v[idx(c, a, t)]; }
    cd get(int c, int a, int t) const { return v[idx(c, a, t)]; }

    void hadamard_aux() {
        const double s = 1.0 / std::sqrt(2.0);
        for (int c = 0; c < 2; ++c)
            for (int t = 0; t < 2; ++t) {
                const cd a0 = get(c, 0, t);
                const cd a1 = get(c, 1, t);
                at(c, 0, t) = s * (a0 + a1);
                at(c, 1, t) = s * (a0 - a1);
            }
    }
    void hadamard_target() {
        const double s = 1.0 / std::sqrt(2.0);
        for (int c = 0; c < 2; ++c)
            for (int a = 0; a < 2; ++a) {
                const cd t0 = get(c, a, 0);
                const cd t1 = get(c, a, 1);
                at(c, a, 0) = s * (t0 + t1);
                at(c, a, 1) = s * (t0 - t1);
            }
    }
    // keep (aux == other) for even parity, (aux != other) for odd; the other
    // bit is c for the first measurement and t for the second
    void parity_project(bool on_control, int bit) {
        for (int c = 0; c < 2; ++c)
            for (int a = 0; a < 2; ++a)
                for (int t = 0; t < 2; ++t) {
                    const int other = on_control ? c : t;
                    const bool keep = (bit == 1) ? (a == other) : (a != other);
                    if (!keep) at(c, a, t) = cd{0, 0};
                }
    }
    void project_aux(int m) {
        for (int c = 0; c < 2; ++c)
            for (int t = 0; t < 2; ++t) at(c, 1 - m, t) = cd{0, 0};
    }
    void normalize() {
        double n2 = 0.0;
        for (const cd& z : v) n2 += std::norm(z);
        const double inv = 1.0 / std::sqrt(n2);
        for (cd& z : v) z *= inv;
    }
    StateVector to_state() const {
        SystemLayout l = cnot_layout();
        std::vector<cd> amp(l.total_dim(), cd{0, 0});
        for (int c = 0; c < 2; ++c)
            for (int a = 0; a < 2; ++a)
                for (int t = 0; t < 2; ++t) amp[code_flat(l, c, a, t)] = get(c, a, t);
        return StateVector::normalized(std::move(l), std::move(amp));
    }
};

}  // namespace

IntermediateReport verify_intermediates(const BranchRecord& branch, const CnotInputs& in) {
    if (branch.p1.kind == meter::ParityKind::EvenPP || branch.p1.kind == meter::ParityKind::EvenMM ||
        branch.p2.kind == meter::ParityKind::EvenPP || branch.p2.kind == meter::ParityKind::EvenMM)
        throw std::invalid_argument("verify_intermediates: closed forms cover ideal-mode branches");
    check_inputs(in);

    Frame f;
    const cd camp[2] = {in.alpha, in.zeta};
    const cd tamp[2] = {in.xi, in.tau};
    for (int c = 0; c < 2; ++c)
        for (int t = 0; t < 2; ++t) f.at(c, 0, t) = camp[c] * tamp[t];

    IntermediateReport rep;
    rep.overlaps[0] = state_overlap(f.to_state(), branch.points[0]);

    f.hadamard_aux();
    f.parity_project(true, branch.p1.parity_bit());
    f.normalize();
    rep.overlaps[1] = state_overlap(f.to_state(), branch.points[1]);

    f.hadamard_aux();
    f.hadamard_target();
    f.parity_project(false, branch.p2.parity_bit());
    f.normalize();
    f.hadamard_aux();
    f.hadamard_target();
    rep.overlaps[2] = state_overlap(f.to_state(), branch.points[2]);

    f.project_aux(branch.m);
    f.normalize();
    rep.overlaps[3] = state_overlap(f.to_state(), branch.points[3]);
    return rep;
}

namespace {

double weighted_fidelity(const CnotInputs& in, MeterMode mode) {
    double acc = 0.0;
    for (const BranchRecord& b : run_cnot_enumerate(in, mode))
        acc += b.probability * branch_fidelity(b, in);
    return acc;
}

}  // namespace

double process_fidelity_basis_inputs(MeterMode mode) {
    const cd one{1, 0};
    const cd nil{0, 0};
    const CnotInputs basis[4] = {{one, nil, one, nil},
                                 {one, nil, nil, one},
                                 {nil, one, one, nil},
                                 {nil, one, nil, one}};
    double acc = 0.0;
    for (const CnotInputs& in : basis) acc += weighted_fidelity(in, mode);
    return acc / 4.0;
}

double process_fidelity_random_inputs(MeterMode mode, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    double acc = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        CnotInputs in;
        std::tie(in.alpha, in.zeta) = rng.haar_qubit();
        std::tie(in.xi, in.tau) = rng.haar_qubit();
        acc += weighted_fidelity(in, mode);
    }
    return acc / static_cast<double>(count);
}

double process_fidelity(MeterMode mode, std::uint64_t seed) {
    const double basis = process_fidelity_basis_inputs(mode);
    const double random = process_fidelity_random_inputs(mode, 20, seed);
    return (4.0 * basis + 20.0 * random) / 24.0;
}

}  // namespace cavq::proto
