#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cavq/dfs.hpp"
#include "cavq/paritymeter.hpp"

namespace cavq::proto {

enum class MeterMode { Ideal, Physical };
enum class ExecutionMode { Enumerate, Sampled };
enum class GateOnC { I, Z };
enum class GateOnT { I, X };

// Logical amplitudes of the control and target inputs; each pair normalized.
struct CnotInputs {
    cd alpha{1.0, 0.0};
    cd zeta{0.0, 0.0};
    cd xi{1.0, 0.0};
    cd tau{0.0, 0.0};
};

// Gates prescribed by the measurement record ("0" odd, "1" even).
std::pair<GateOnC, GateOnT> correction_lookup(int p1, int p2, int m);

// One measurement-outcome path. Snapshots: 0 initial, 1 after the first
// parity measurement, 2 before the auxiliary measurement, 3 after it
// (pre-correction); final_state carries the corrections.
struct BranchRecord {
    meter::ParityOutcome p1;
    meter::ParityOutcome p2;
    int m = 0;
    double probability = 0.0;
    GateOnC correction_c = GateOnC::I;
    GateOnT correction_t = GateOnT::I;
    StateVector final_state;
    std::array<StateVector, 4> points;
};

// Five-device layout c1, c2, aux, t1, t2.
SystemLayout cnot_layout();
dfs::LogicalQubit control_qubit();
dfs::LogicalQubit target_qubit();

StateVector initial_state(const CnotInputs& in);

// CNOT image of the inputs with the auxiliary device left in |m>.
StateVector ideal_cnot_image(const CnotInputs& in, int m);

// Deterministic expansion of every outcome path with Born probabilities.
std::vector<BranchRecord> run_cnot_enumerate(const CnotInputs& in, MeterMode mode,
                                             double p_floor = 1e-12);

// One sampled path.
BranchRecord run_cnot_sampled(const CnotInputs& in, MeterMode mode, Rng& rng);

// |<image | final>|^2 for the branch's auxiliary outcome.
double branch_fidelity(const BranchRecord& branch, const CnotInputs& in);

// (control, target) content of a final state, with the measured auxiliary
// device contracted out.
StateVector contract_aux(const StateVector& state, int m);

struct IntermediateReport {
    std::array<double, 4> overlaps{};  // |<expected|snapshot>| per point
    double min_overlap() const;
};

// Closed-form check of the recorded snapshots against the measurement
// algebra, evaluated independently of the gate/measure machinery.
// Requires an ideal-mode enumerated branch.
IntermediateReport verify_intermediates(const BranchRecord& branch, const CnotInputs& in);

inline constexpr std::uint64_t kProcessFidelitySeed = 0x5eedCab1e5ULL;

// Mean branch-probability-weighted fidelity over the four logical basis
// inputs plus 20 Haar-random product inputs.
double process_fidelity(MeterMode mode, std::uint64_t seed = kProcessFidelitySeed);
// The same average restricted to one class of inputs.
double process_fidelity_basis_inputs(MeterMode mode);
double process_fidelity_random_inputs(MeterMode mode, std::size_t count,
                                      std::uint64_t seed = kProcessFidelitySeed);

}  // namespace cavq::proto
