// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exits nonzero if any fail.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cavq/dfs.hpp"
#include "cavq/eigh.hpp"
#include "cavq/hamiltonians.hpp"
#include "cavq/paritymeter.hpp"
#include "cavq/propagation.hpp"
#include "cavq/protocol.hpp"
#include "cavq/rng.hpp"

using namespace cavq;

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTwoPi = 2.0 * kPi;

// Frozen from the branch-enumeration oracle (see test_protocol.cpp).
constexpr double kPhysicalSummaryFidelity = 0.729130136518378;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& msg) {
        if (!cond && ok) {
            ok = false;
            detail = msg;
        }
    }
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double max_entry_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

// --------------------------------------------------------------------------
// 1. parity projector algebra

Check criterion_projectors() {
    Check c;
    for (meter::ReadoutBasis basis : {meter::ReadoutBasis::PlusMinus, meter::ReadoutBasis::ZeroOne}) {
        const auto ps = meter::parity_projectors(basis, "d0", "d1");
        const OperatorMatrix sum = ps[0] + ps[1] + ps[2];
        const double comp = max_entry_diff(sum, OperatorMatrix::identity(sum.layout()));
        c.require(comp < 1e-14, "completeness defect " + num(comp));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                if (i == j) continue;
                const double cross = (ps[i] * ps[j]).max_abs();
                c.require(cross < 1e-14, "pairwise product " + num(cross));
            }
    }
    return c;
}

// --------------------------------------------------------------------------
// 2. DFS invariance and ensemble dephasing

Check criterion_dfs() {
    Check c;
    const dfs::LogicalQubit q{"d0", "d1"};
    Rng rng(2026);
    std::vector<std::pair<cd, cd>> amps(100);
    for (auto& a : amps) a = rng.haar_qubit();
    for (int k = 0; k < 100; ++k) {
        const double phi = rng.uniform(0.0, kTwoPi);
        const OperatorMatrix u = dfs::collective_dephasing(phi, 2);
        for (const auto& [a, z] : amps) {
            const StateVector in = dfs::encode(a, z, q);
            const double ov = state_overlap(in, apply(u, in));
            c.require(ov >= 1.0 - 1e-12, "encoded overlap " + num(ov));
        }
    }

    const double s = 1.0 / std::sqrt(2.0);
    const StateVector bell =
        StateVector::normalized(q.pair_layout(), {cd{s, 0}, cd{0, 0}, cd{0, 0}, cd{s, 0}});
    const StateVector enc = dfs::encode(cd{s, 0}, cd{s, 0}, q);
    cd bell_coh{0, 0};
    cd enc_coh{0, 0};
    const int draws = 1000;
    for (int k = 0; k < draws; ++k) {
        const double phi = rng.uniform(0.0, kTwoPi);
        const OperatorMatrix u = dfs::collective_dephasing(phi, 2);
        const StateVector b = apply(u, bell);
        bell_coh += b.amplitude(0) * std::conj(b.amplitude(3));
        const StateVector e = apply(u, enc);
        enc_coh += e.amplitude(1) * std::conj(e.amplitude(2));
    }
    const double bare = std::abs(bell_coh) / draws;
    const double kept = std::abs(enc_coh) / draws;
    c.require(bare < 0.05, "bare coherence " + num(bare));
    c.require(std::abs(kept - 0.5) <= 1e-12, "encoded coherence " + num(kept));
    return c;
}

// --------------------------------------------------------------------------
// 3. logical gate equivalence

Check criterion_gate_equivalence() {
    Check c;
    const dfs::LogicalQubit q{"d0", "d1"};
    Rng rng(33);
    for (double gamma : {kPi / 16.0, kPi / 8.0, kPi / 4.0, 1.0}) {
        const OperatorMatrix ux = dfs::ux_gate(gamma, q);
        const OperatorMatrix uy = dfs::uy_gate(gamma, q);
        // closed-form rotations about the realized generators
        const double co = std::cos(2.0 * gamma);
        const double si = std::sin(2.0 * gamma);
        const std::array<cd, 4> rx{cd{co, 0}, cd{0, -si}, cd{0, -si}, cd{co, 0}};
        // restriction of sx sy is [[0, i], [-i, 0]]
        const std::array<cd, 4> ry{cd{co, 0}, cd{si, 0}, cd{-si, 0}, cd{co, 0}};
        const auto xr = dfs::restrict_to_code(ux, q);
        const auto yr = dfs::restrict_to_code(uy, q);
        auto infid = [](const std::array<cd, 4>& a, const std::array<cd, 4>& b) {
            cd tr{0, 0};
            tr += std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
            tr += std::conj(a[2]) * b[2] + std::conj(a[3]) * b[3];
            return 1.0 - std::abs(tr) / 2.0;
        };
        c.require(infid(rx, xr) < 1e-10, "U_x infidelity " + num(infid(rx, xr)));
        c.require(infid(ry, yr) < 1e-10, "U_y infidelity " + num(infid(ry, yr)));
        for (int k = 0; k < 5; ++k) {
            const auto [a, z] = rng.haar_qubit();
            const double lx = dfs::pair_leakage(apply(ux, dfs::encode(a, z, q)), q);
            const double ly = dfs::pair_leakage(apply(uy, dfs::encode(a, z, q)), q);
            c.require(lx < 1e-12 && ly < 1e-12, "leakage " + num(std::max(lx, ly)));
        }
    }
    return c;
}

// --------------------------------------------------------------------------
// 4. universality of the X-Y-X synthesis

Check criterion_universality() {
    Check c;
    const dfs::LogicalQubit q{"d0", "d1"};
    Rng rng(44);
    double mean = 0.0;
    const int count = 100;
    for (int k = 0; k < count; ++k) {
        const auto [a, b] = rng.haar_qubit();
        const std::array<cd, 4> target{a, -std::conj(b), b, std::conj(a)};
        const auto seq = dfs::synthesize_logical(target, q);
        c.require(seq.size() <= 3, "sequence length");
        const auto r = dfs::restrict_to_code(dfs::compose_rotations(seq, q), q);
        cd tr{0, 0};
        tr += std::conj(target[0]) * r[0] + std::conj(target[1]) * r[1];
        tr += std::conj(target[2]) * r[2] + std::conj(target[3]) * r[3];
        mean += 1.0 - std::abs(tr) / 2.0;
    }
    mean /= count;
    c.require(mean < 1e-9, "mean infidelity " + num(mean));
    return c;
}

// --------------------------------------------------------------------------
// 5. effective-Hamiltonian oracle equivalence

Check criterion_effective_oracle() {
    Check c;
    const double beta = 0.05;
    const double delta = 1.0;
    const double chi = beta * beta / delta;
    const double horizon = kTwoPi / delta;

    ham::FluxConfig fc;
    fc.e_j = 1.0;
    fc.g = beta;
    fc.omega_c = 1.0;
    fc.omega = fc.omega_c + delta;
    const std::vector<ham::FluxConfig> cfgs{fc, fc};
    const ham::EffectiveParams params = ham::EffectiveParams::from_config(fc);

    Rng rng(55);
    std::vector<std::vector<cd>> device_states(20);
    for (auto& v : device_states) v = rng.haar_amplitudes(4);

    auto propagate = [&](std::size_t n_max, std::size_t steps) {
        const auto sampler = [&, n_max](double t) {
            return ham::rwa_hamiltonian(cfgs, t, params, n_max);
        };
        return propagate_timedep(sampler, 0.0, horizon, steps, fc.hbar);
    };
    auto state_in = [&](const std::vector<cd>& dev, std::size_t n_max) {
        std::vector<cd> amp(4 * (n_max + 1), cd{0, 0});
        for (std::size_t k = 0; k < 4; ++k) amp[k * (n_max + 1)] = dev[k];
        return StateVector::normalized(ham::device_cavity_layout(2, n_max), std::move(amp));
    };
    auto mean_overlap = [&](const OperatorMatrix& u, std::size_t n_max, double sign,
                            double* min_out) {
        const OperatorMatrix udev = expm_hermitian(
            ham::effective_hamiltonian(PauliAxis::X, 2, chi, fc.hbar), -sign * horizon, fc.hbar);
        const OperatorMatrix expected = kron(udev, identity_op("cav", n_max + 1));
        double acc = 0.0;
        double mn = 1.0;
        for (const auto& dev : device_states) {
            const StateVector psi = state_in(dev, n_max);
            const double ov = state_overlap(apply(u, psi), apply(expected, psi));
            acc += ov;
            mn = std::min(mn, ov);
        }
        if (min_out) *min_out = mn;
        return acc / static_cast<double>(device_states.size());
    };

    const std::size_t base_steps = 400;
    const OperatorMatrix u20 = propagate(20, base_steps);
    const OperatorMatrix u20d = propagate(20, 2 * base_steps);
    const OperatorMatrix u30 = propagate(30, base_steps);
    const OperatorMatrix u_oracle = propagate(30, 10 * base_steps);

    // ten-times-finer oracle fixes the sign of the geometric phase
    const double ov_plus = mean_overlap(u_oracle, 30, +1.0, nullptr);
    const double ov_minus = mean_overlap(u_oracle, 30, -1.0, nullptr);
    const double sign = ov_minus >= ov_plus ? -1.0 : +1.0;
    c.require(sign == ham::kGeometricPhaseSign,
              "oracle sign " + num(sign) + " disagrees with the frozen constant");

    double min20 = 1.0;
    const double mean20 = mean_overlap(u20, 20, sign, &min20);
    c.require(min20 >= 1.0 - 1e-6, "state overlap " + num(min20));

    // convergence: doubling steps and raising n_max must not move the result
    const double mean20d = mean_overlap(u20d, 20, sign, nullptr);
    const double mean30 = mean_overlap(u30, 30, sign, nullptr);
    const double mean_oracle = mean_overlap(u_oracle, 30, sign, nullptr);
    c.require(std::abs(mean20 - mean20d) < 1e-8, "step doubling moved overlap by " +
                                                      num(std::abs(mean20 - mean20d)));
    c.require(std::abs(mean20 - mean30) < 1e-8,
              "n_max recheck moved overlap by " + num(std::abs(mean20 - mean30)));
    c.require(std::abs(mean_oracle - mean20) < 1e-8,
              "oracle not converged: " + num(std::abs(mean_oracle - mean20)));
    return c;
}

// --------------------------------------------------------------------------
// 6. Lamb-Dicke scaling

Check criterion_lambdicke() {
    Check c;
    ham::FluxConfig cfg;
    cfg.e_j = 1.0;
    cfg.e_c = 0.8;
    cfg.nbar = 0.5;
    cfg.phi2 = kPi / 3.0;
    const std::size_t n_max = 10;
    auto err = [&](double g) {
        ham::FluxConfig cc = cfg;
        cc.g = g;
        OperatorMatrix diff =
            ham::device_cavity_exact(cc, n_max) - ham::lambdicke_hamiltonian(cc, n_max);
        OperatorMatrix h{diff.layout(), std::vector<cd>(diff.data().begin(), diff.data().end()),
                         true};
        return spectral_norm_hermitian(h);
    };
    const double ratio = err(0.05) / err(0.025);
    c.require(ratio > 3.2 && ratio < 4.8, "ratio " + num(ratio));
    return c;
}

// --------------------------------------------------------------------------
// 7. RWA monotonicity

Check criterion_rwa_monotonic() {
    Check c;
    const double beta = 0.05;
    const double delta = 1.0;
    const std::size_t n_max = 10;
    const std::size_t steps = 2048;

    double prev = -1.0;
    for (const double ratio : {1e2, 1e3, 1e4}) {
        ham::FluxConfig fc;
        fc.e_j = 1.0;
        fc.g = beta;
        fc.omega_c = ratio * beta;
        fc.omega = fc.omega_c + delta;
        const std::vector<ham::FluxConfig> cfgs{fc, fc};
        const ham::EffectiveParams params = ham::EffectiveParams::from_config(fc);
        const double period = kTwoPi / fc.omega;

        const OperatorMatrix h0 = ham::cavity_free_hamiltonian(2, n_max, fc.omega_c, fc.hbar);
        const auto lab = [&](double t) {
            OperatorMatrix h = ham::multidevice_lab_hamiltonian(cfgs, t, n_max);
            h += h0;
            return h;
        };
        const OperatorMatrix u_full = propagate_timedep(lab, 0.0, period, steps, fc.hbar);
        const OperatorMatrix u_int = expm_hermitian(h0, -period, fc.hbar) * u_full;
        const auto rwa = [&](double t) { return ham::rwa_hamiltonian(cfgs, t, params, n_max); };
        const OperatorMatrix u_rwa = propagate_timedep(rwa, 0.0, period, steps, fc.hbar);

        const double ov = trace_overlap(u_int, u_rwa);
        c.require(ov > prev, "overlap " + num(ov) + " not above " + num(prev) +
                                 " at omega_c/beta=" + num(ratio));
        prev = ov;
    }
    return c;
}

// --------------------------------------------------------------------------
// 8. CNOT correctness with the ideal meter

Check criterion_cnot_ideal() {
    Check c;
    std::vector<proto::CnotInputs> inputs;
    const cd one{1, 0};
    const cd nil{0, 0};
    inputs.push_back({one, nil, one, nil});
    inputs.push_back({one, nil, nil, one});
    inputs.push_back({nil, one, one, nil});
    inputs.push_back({nil, one, nil, one});
    Rng rng(88);
    for (int k = 0; k < 20; ++k) {
        proto::CnotInputs in;
        std::tie(in.alpha, in.zeta) = rng.haar_qubit();
        std::tie(in.xi, in.tau) = rng.haar_qubit();
        inputs.push_back(in);
    }

    double weighted = 0.0;
    for (const auto& in : inputs) {
        double ptot = 0.0;
        for (const auto& b : proto::run_cnot_enumerate(in, proto::MeterMode::Ideal)) {
            ptot += b.probability;
            const double fid = proto::branch_fidelity(b, in);
            c.require(fid >= 1.0 - 1e-9, "branch fidelity " + num(fid));
            const auto want =
                proto::correction_lookup(b.p1.parity_bit(), b.p2.parity_bit(), b.m);
            c.require(b.correction_c == want.first && b.correction_t == want.second,
                      "correction mismatch vs the lookup table");
            weighted += b.probability * fid;
        }
        c.require(std::abs(ptot - 1.0) < 1e-10, "branch probabilities sum to " + num(ptot));
    }
    weighted /= static_cast<double>(inputs.size());
    c.require(weighted >= 1.0 - 1e-9, "summary fidelity " + num(weighted));
    return c;
}

// --------------------------------------------------------------------------
// 9. worked-branch reproduction

Check criterion_worked_branch() {
    Check c;
    proto::CnotInputs in;
    in.alpha = cd{0.6, 0.0};
    in.zeta = cd{0.0, 0.8};
    in.xi = cd{0.5, 0.5};
    in.tau = std::polar(1.0 / std::sqrt(2.0), kPi / 7.0);

    const auto branches = proto::run_cnot_enumerate(in, proto::MeterMode::Ideal);
    const proto::BranchRecord* worked = nullptr;
    for (const auto& b : branches)
        if (b.p1.parity_bit() == 0 && b.p2.parity_bit() == 1 && b.m == 0) worked = &b;
    c.require(worked != nullptr, "missing (P1 odd, P2 even, M 0) branch");
    if (!worked) return c;

    const SystemLayout l = proto::cnot_layout();
    auto lidx = [](int cbit, int a, int tbit) {
        return static_cast<std::size_t>(cbit * 16 + (1 - cbit) * 8 + a * 4 + tbit * 2 +
                                        (1 - tbit));
    };
    const double s = 1.0 / std::sqrt(2.0);

    // point 1: (alpha |0>_C |1>_A + zeta |1>_C |0>_A) (x) |psi>_T
    {
        std::vector<cd> amp(32, cd{0, 0});
        const cd t[2] = {in.xi, in.tau};
        for (int tt = 0; tt < 2; ++tt) {
            amp[lidx(0, 1, tt)] = in.alpha * t[tt];
            amp[lidx(1, 0, tt)] = in.zeta * t[tt];
        }
        const double ov = state_overlap(StateVector::normalized(l, amp), worked->points[1]);
        c.require(ov >= 1.0 - 1e-10, "point 1 overlap " + num(ov));
    }
    // point 2: the half-sum expansion over psi_A and psibar_A
    {
        std::vector<cd> amp(32, cd{0, 0});
        const cd cpre[2] = {in.alpha, in.zeta};
        const cd sum[2] = {in.tau + in.xi, in.xi + in.tau};
        const cd dif[2] = {in.tau - in.xi, in.xi - in.tau};
        for (int cc = 0; cc < 2; ++cc)
            for (int a = 0; a < 2; ++a)
                for (int tt = 0; tt < 2; ++tt) {
                    const double asign = (a == 1) ? -1.0 : 1.0;
                    const double tsign = (tt == 1) ? -1.0 : 1.0;
                    const cd v = sum[cc] * s + dif[cc] * (s * asign * tsign);
                    amp[lidx(cc, a, tt)] = 0.5 * cpre[cc] * v;
                }
        const double ov = state_overlap(StateVector::normalized(l, amp), worked->points[2]);
        c.require(ov >= 1.0 - 1e-10, "point 2 overlap " + num(ov));
    }
    // point 3: alpha |0>_C (tau|0>+xi|1>)_T + zeta |1>_C (xi|0>+tau|1>)_T
    {
        std::vector<cd> amp(32, cd{0, 0});
        amp[lidx(0, 0, 0)] = in.alpha * in.tau;
        amp[lidx(0, 0, 1)] = in.alpha * in.xi;
        amp[lidx(1, 0, 0)] = in.zeta * in.xi;
        amp[lidx(1, 0, 1)] = in.zeta * in.tau;
        const double ov = state_overlap(StateVector::normalized(l, amp), worked->points[3]);
        c.require(ov >= 1.0 - 1e-10, "point 3 overlap " + num(ov));
    }
    return c;
}

// --------------------------------------------------------------------------
// 10. physical-meter discrepancy is detected, not hidden

Check criterion_physical_meter() {
    Check c;
    const double summary = proto::process_fidelity(proto::MeterMode::Physical);
    c.require(summary < 0.95, "summary " + num(summary) + " not below 0.95");
    c.require(std::abs(summary - kPhysicalSummaryFidelity) < 1e-9,
              "summary " + num(summary) + " drifted from the frozen value " +
                  num(kPhysicalSummaryFidelity));
    // This criterion asserts that logical-basis inputs keep fidelity 1 in
    // three-outcome mode. The measured value is 3/4: the logical Hadamard
    // before the second parity measurement creates even-sector coherence for
    // every input, and the rank-1 even projectors destroy it. Asserted as
    // stated; the failure is analyzed in the project notes.
    const double basis = proto::process_fidelity_basis_inputs(proto::MeterMode::Physical);
    c.require(std::abs(basis - 1.0) < 1e-9,
              "logical-basis fidelity is " + num(basis) + ", not 1");
    return c;
}

// --------------------------------------------------------------------------
// 11. switching logic

Check criterion_switching() {
    Check c;
    const SystemLayout pair{{Subsystem{"d0", 2}, Subsystem{"d1", 2}}};
    auto pm_state = [&](int s1, int s2) {
        return StateVector::normalized(
            pair, {cd{0.5, 0}, cd{0.5 * s2, 0}, cd{0.5 * s1, 0}, cd{0.5 * s1 * s2, 0}});
    };
    const meter::MeterConfig armed =
        meter::MeterConfig::armed(1.0, 1.0, 10.0, meter::ReadoutBasis::PlusMinus);
    const meter::MeterConfig off =
        meter::MeterConfig::disarmed(1.0, 1.0, 10.0, 0.5, meter::ReadoutBasis::PlusMinus);
    for (int s1 : {+1, -1})
        for (int s2 : {+1, -1}) {
            const StateVector psi = pm_state(s1, s2);
            const bool fwd = meter::switching_decision(psi, armed).switched;
            const bool rev =
                meter::switching_decision(psi, armed, meter::BiasDirection::Reversed).switched;
            c.require(fwd == (s1 == +1 && s2 == +1), "forward switch pattern");
            c.require(rev == (s1 == -1 && s2 == -1), "reversed switch pattern");
            c.require(!meter::switching_decision(psi, off).switched, "disarmed forward");
            c.require(
                !meter::switching_decision(psi, off, meter::BiasDirection::Reversed).switched,
                "disarmed reversed");
        }
    return c;
}

// --------------------------------------------------------------------------
// 12. reproducibility of the CLI

Check criterion_reproducibility() {
    Check c;
    namespace fs = std::filesystem;
    const std::string cli = CAVQ_CLI_PATH;
    const std::string cfg = std::string(CAVQ_CONFIG_DIR) + "/cnot_ideal.json";
    const fs::path out1 = fs::temp_directory_path() / "cavq_accept_a.out";
    const fs::path out2 = fs::temp_directory_path() / "cavq_accept_b.out";
    auto run = [&](const fs::path& out) {
        const std::string cmd = cli + " cnot --config " + cfg + " --out " + out.string() +
                                " >/dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    c.require(run(out1) && run(out2), "cli invocation failed");
    if (c.ok) {
        const std::string a = slurp(out1);
        c.require(!a.empty() && a == slurp(out2), "outputs differ between runs");
    }
    fs::remove(out1);
    fs::remove(out2);
    return c;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* label;
        std::function<Check()> run;
    };
    const std::vector<Entry> criteria = {
        {1, "parity projector completeness and orthogonality", criterion_projectors},
        {2, "DFS invariance under collective dephasing", criterion_dfs},
        {3, "logical gate equivalence on the code subspace", criterion_gate_equivalence},
        {4, "universality of X-Y-X synthesis", criterion_universality},
        {5, "effective-Hamiltonian oracle equivalence", criterion_effective_oracle},
        {6, "Lamb-Dicke error scaling", criterion_lambdicke},
        {7, "RWA overlap monotonicity", criterion_rwa_monotonic},
        {8, "measurement-based CNOT with the ideal meter", criterion_cnot_ideal},
        {9, "worked-branch intermediate states", criterion_worked_branch},
        {10, "physical-meter discrepancy detection", criterion_physical_meter},
        {11, "switching-current threshold logic", criterion_switching},
        {12, "CLI reproducibility", criterion_reproducibility},
    };

    int failures = 0;
    for (const auto& e : criteria) {
        const Check c = e.run();
        if (c.ok) {
            std::printf("[PASS] criterion %2d: %s\n", e.id, e.label);
        } else {
            ++failures;
            std::printf("[FAIL] criterion %2d: %s — %s\n", e.id, e.label, c.detail.c_str());
        }
        std::fflush(stdout);
    }
    if (failures) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
