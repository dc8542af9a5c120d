#pragma once

#include <array>
#include <string>

#include "cavq/measure.hpp"
#include "cavq/operator.hpp"
#include "cavq/rng.hpp"

namespace cavq::meter {

enum class ReadoutBasis { PlusMinus, ZeroOne };

// Switching-current meter configuration. Currents in arbitrary fixed units;
// the armed working point is I_b = I_c - (I_1 + I_2)/2.
struct MeterConfig {
    double i1 = 0.0;
    double i2 = 0.0;
    double ic = 0.0;
    double ib = 0.0;
    ReadoutBasis basis = ReadoutBasis::ZeroOne;

    static MeterConfig armed(double i1, double i2, double ic,
                             ReadoutBasis basis = ReadoutBasis::ZeroOne);
    static MeterConfig disarmed(double i1, double i2, double ic, double ib,
                                ReadoutBasis basis = ReadoutBasis::ZeroOne);

    bool is_armed() const;
    bool is_disarmed() const;
    void validate() const;  // throws on nonpositive currents
};

enum class ParityKind { EvenPP, EvenMM, Odd, Even };
enum class VoltageStep { V1, V2, None };

struct ParityOutcome {
    ParityKind kind = ParityKind::Odd;
    VoltageStep voltage_step = VoltageStep::None;

    // Table-I bit: 1 = even, 0 = odd.
    int parity_bit() const {
        return (kind == ParityKind::Odd) ? 0 : 1;
    }
};

enum class BiasDirection { Forward, Reversed };

// I_hat = I1 sx (x) I + I2 I (x) sx on the device pair.
OperatorMatrix current_operator(const MeterConfig& cfg, const std::string& dev1 = "d0",
                                const std::string& dev2 = "d1");

struct SwitchingResult {
    double i0 = 0.0;
    bool switched = false;
};

// I0 = |I_b + <I_hat>| (forward) or |-I_b + <I_hat>| (reversed); the junction
// switches on the strict threshold I0 > I_c.
SwitchingResult switching_decision(const StateVector& pair_state, const MeterConfig& cfg,
                                   BiasDirection dir = BiasDirection::Forward);

// The three projectors {P1', P2', P3'} on a device pair in the configured
// basis: rank-1 even projectors plus the rank-2 odd projector.
std::array<OperatorMatrix, 3> parity_projectors(ReadoutBasis basis, const std::string& dev1,
                                                const std::string& dev2);

struct MeterResult {
    ParityOutcome outcome;
    double probability = 0.0;
    StateVector post;
};

// Sequential switching readout: the forward probe fires on P1' (V1), the
// reversed probe on P2' (V2), silence on both means odd parity. The meter
// must be armed. Acts on the named pair inside the state's layout.
MeterResult three_outcome_meter(const StateVector& state, const std::string& dev1,
                                const std::string& dev2, const MeterConfig& cfg, Rng& rng);
std::vector<MeterResult> three_outcome_enumerate(const StateVector& state,
                                                 const std::string& dev1,
                                                 const std::string& dev2, const MeterConfig& cfg,
                                                 double p_floor = 1e-12);

// Idealized two-outcome parity channel: rank-2 even projector P1' + P2',
// coherence-preserving inside both parity subspaces.
MeterResult ideal_parity_channel(const StateVector& state, const std::string& dev1,
                                 const std::string& dev2, ReadoutBasis basis, Rng& rng);
std::vector<MeterResult> ideal_parity_enumerate(const StateVector& state, const std::string& dev1,
                                                const std::string& dev2, ReadoutBasis basis,
                                                double p_floor = 1e-12);

struct SingleDeviceResult {
    int outcome = 0;  // 0|1 in the chosen basis (for PlusMinus: 0 = |+>, 1 = |->)
    double probability = 0.0;
    StateVector post;
};

// Projective measurement of one device, embedded in the full layout.
SingleDeviceResult single_device_measure(const StateVector& state, const std::string& device,
                                         ReadoutBasis basis, Rng& rng);
std::vector<SingleDeviceResult> single_device_enumerate(const StateVector& state,
                                                        const std::string& device,
                                                        ReadoutBasis basis,
                                                        double p_floor = 1e-12);

}  // namespace cavq::meter
