#include "cavq/paritymeter.hpp"

#include <cmath>
#include <stdexcept>

#include "cavq/elementary.hpp"

namespace cavq::meter {

namespace {

SystemLayout pair_layout(const std::string& dev1, const std::string& dev2) {
    return SystemLayout{{Subsystem{dev1, 2}, Subsystem{dev2, 2}}};
}

// Outer product |v><v| from exact entries.
OperatorMatrix dyad(const SystemLayout& layout, const std::array<cd, 4>& v) {
    std::vector<cd> m(16);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m[i * 4 + j] = v[i] * std::conj(v[j]);
    return OperatorMatrix{layout, std::move(m), true};
}

ParityOutcome outcome_for(std::size_t projector_index) {
    switch (projector_index) {
        case 0: return {ParityKind::EvenPP, VoltageStep::V1};
        case 1: return {ParityKind::EvenMM, VoltageStep::V2};
        default: return {ParityKind::Odd, VoltageStep::None};
    }
}

std::array<OperatorMatrix, 3> embedded_projectors(const SystemLayout& layout,
                                                  const std::string& dev1,
                                                  const std::string& dev2, ReadoutBasis basis) {
    const auto ps = parity_projectors(basis, dev1, dev2);
    return {embed(ps[0], layout, {dev1, dev2}), embed(ps[1], layout, {dev1, dev2}),
            embed(ps[2], layout, {dev1, dev2})};
}

}  // namespace

MeterConfig MeterConfig::armed(double i1, double i2, double ic, ReadoutBasis basis) {
    MeterConfig cfg{i1, i2, ic, ic - 0.5 * (i1 + i2), basis};
    cfg.validate();
    if (!cfg.is_armed())
        throw std::invalid_argument("meter config: currents do not admit an armed working point");
    return cfg;
}

MeterConfig MeterConfig::disarmed(double i1, double i2, double ic, double ib,
                                  ReadoutBasis basis) {
    MeterConfig cfg{i1, i2, ic, ib, basis};
    cfg.validate();
    if (!cfg.is_disarmed())
        throw std::invalid_argument("meter config: bias too large for the disarmed regime");
    return cfg;
}

bool MeterConfig::is_armed() const {
    const double want = ic - 0.5 * (i1 + i2);
    return std::abs(ib - want) <= 1e-12 * std::max({std::abs(ib), std::abs(want), 1.0});
}

bool MeterConfig::is_disarmed() const { return ib + i1 + i2 < ic; }

void MeterConfig::validate() const {
    if (i1 <= 0.0 || i2 <= 0.0 || ic <= 0.0)
        throw std::invalid_argument("meter config: critical currents must be positive");
}

OperatorMatrix current_operator(const MeterConfig& cfg, const std::string& dev1,
                                const std::string& dev2) {
    cfg.validate();
    const SystemLayout layout = pair_layout(dev1, dev2);
    OperatorMatrix t1 = embed(pauli(PauliAxis::X, dev1), layout, {dev1});
    t1 *= cd{cfg.i1, 0.0};
    OperatorMatrix t2 = embed(pauli(PauliAxis::X, dev2), layout, {dev2});
    t2 *= cd{cfg.i2, 0.0};
    t1 += t2;
    return t1;
}

SwitchingResult switching_decision(const StateVector& pair_state, const MeterConfig& cfg,
                                   BiasDirection dir) {
    cfg.validate();
    if (!cfg.is_armed() && !cfg.is_disarmed())
        throw std::invalid_argument("switching_decision: meter is neither armed nor disarmed");
    if (pair_state.dim() != 4)
        throw std::invalid_argument("switching_decision: expected a two-device state");
    const std::string dev1 = pair_state.layout().subsystem(0).label;
    const std::string dev2 = pair_state.layout().subsystem(1).label;
    const OperatorMatrix ihat = current_operator(cfg, dev1, dev2);
    const double id = expectation(pair_state, ihat).real();
    const double bias = dir == BiasDirection::Forward ? cfg.ib : -cfg.ib;
    const double i0 = std::abs(bias + id);
    return SwitchingResult{i0, i0 > cfg.ic};
}

std::array<OperatorMatrix, 3> parity_projectors(ReadoutBasis basis, const std::string& dev1,
                                                const std::string& dev2) {
    const SystemLayout layout = pair_layout(dev1, dev2);
    if (basis == ReadoutBasis::PlusMinus) {
        // |++>, |-->, |+->, |-+> with exact +-1/2 entries
        const OperatorMatrix ppp = dyad(layout, {cd{0.5, 0}, cd{0.5, 0}, cd{0.5, 0}, cd{0.5, 0}});
        const OperatorMatrix pmm = dyad(layout, {cd{0.5, 0}, cd{-0.5, 0}, cd{-0.5, 0}, cd{0.5, 0}});
        OperatorMatrix podd = dyad(layout, {cd{0.5, 0}, cd{-0.5, 0}, cd{0.5, 0}, cd{-0.5, 0}});
        podd += dyad(layout, {cd{0.5, 0}, cd{0.5, 0}, cd{-0.5, 0}, cd{-0.5, 0}});
        return {ppp, pmm, podd};
    }
    // {|0>,|1>} basis: even means equal bits
    const OperatorMatrix p00 = dyad(layout, {cd{1, 0}, cd{0, 0}, cd{0, 0}, cd{0, 0}});
    const OperatorMatrix p11 = dyad(layout, {cd{0, 0}, cd{0, 0}, cd{0, 0}, cd{1, 0}});
    OperatorMatrix podd = dyad(layout, {cd{0, 0}, cd{1, 0}, cd{0, 0}, cd{0, 0}});
    podd += dyad(layout, {cd{0, 0}, cd{0, 0}, cd{1, 0}, cd{0, 0}});
    return {p00, p11, podd};
}

MeterResult three_outcome_meter(const StateVector& state, const std::string& dev1,
                                const std::string& dev2, const MeterConfig& cfg, Rng& rng) {
    cfg.validate();
    if (!cfg.is_armed())
        throw std::invalid_argument("three_outcome_meter: meter must be armed");
    const auto ps = embedded_projectors(state.layout(), dev1, dev2, cfg.basis);
    const MeasurementOutcome mo = measure(state, std::span<const OperatorMatrix>(ps), rng);
    return MeterResult{outcome_for(mo.index), mo.probability, mo.post};
}

std::vector<MeterResult> three_outcome_enumerate(const StateVector& state,
                                                 const std::string& dev1,
                                                 const std::string& dev2, const MeterConfig& cfg,
                                                 double p_floor) {
    cfg.validate();
    if (!cfg.is_armed())
        throw std::invalid_argument("three_outcome_enumerate: meter must be armed");
    const auto ps = embedded_projectors(state.layout(), dev1, dev2, cfg.basis);
    std::vector<MeterResult> out;
    for (const MeasurementOutcome& mo :
         enumerate_outcomes(state, std::span<const OperatorMatrix>(ps), p_floor))
        out.push_back(MeterResult{outcome_for(mo.index), mo.probability, mo.post});
    return out;
}

namespace {

std::array<OperatorMatrix, 2> ideal_projectors(const SystemLayout& layout,
                                               const std::string& dev1, const std::string& dev2,
                                               ReadoutBasis basis) {
    auto ps = parity_projectors(basis, dev1, dev2);
    ps[0] += ps[1];  // rank-2 even projector
    return {embed(ps[0], layout, {dev1, dev2}), embed(ps[2], layout, {dev1, dev2})};
}

ParityOutcome ideal_outcome(std::size_t index) {
    return index == 0 ? ParityOutcome{ParityKind::Even, VoltageStep::None}
                      : ParityOutcome{ParityKind::Odd, VoltageStep::None};
}

}  // namespace

MeterResult ideal_parity_channel(const StateVector& state, const std::string& dev1,
                                 const std::string& dev2, ReadoutBasis basis, Rng& rng) {
    const auto ps = ideal_projectors(state.layout(), dev1, dev2, basis);
    const MeasurementOutcome mo = measure(state, std::span<const OperatorMatrix>(ps), rng);
    return MeterResult{ideal_outcome(mo.index), mo.probability, mo.post};
}

std::vector<MeterResult> ideal_parity_enumerate(const StateVector& state, const std::string& dev1,
                                                const std::string& dev2, ReadoutBasis basis,
                                                double p_floor) {
    const auto ps = ideal_projectors(state.layout(), dev1, dev2, basis);
    std::vector<MeterResult> out;
    for (const MeasurementOutcome& mo :
         enumerate_outcomes(state, std::span<const OperatorMatrix>(ps), p_floor))
        out.push_back(MeterResult{ideal_outcome(mo.index), mo.probability, mo.post});
    return out;
}

namespace {

std::array<OperatorMatrix, 2> device_projectors(const SystemLayout& layout,
                                                const std::string& device, ReadoutBasis basis) {
    const SystemLayout dev = SystemLayout::single(device, 2);
    OperatorMatrix p0 = OperatorMatrix::zero(dev);
    OperatorMatrix p1 = OperatorMatrix::zero(dev);
    if (basis == ReadoutBasis::ZeroOne) {
        p0.at(0, 0) = cd{1, 0};
        p1.at(1, 1) = cd{1, 0};
    } else {
        p0.at(0, 0) = p0.at(0, 1) = p0.at(1, 0) = p0.at(1, 1) = cd{0.5, 0};
        p1.at(0, 0) = p1.at(1, 1) = cd{0.5, 0};
        p1.at(0, 1) = p1.at(1, 0) = cd{-0.5, 0};
    }
    return {embed(p0, layout, {device}), embed(p1, layout, {device})};
}

}  // namespace

SingleDeviceResult single_device_measure(const StateVector& state, const std::string& device,
                                         ReadoutBasis basis, Rng& rng) {
    const auto ps = device_projectors(state.layout(), device, basis);
    const MeasurementOutcome mo = measure(state, std::span<const OperatorMatrix>(ps), rng);
    return SingleDeviceResult{static_cast<int>(mo.index), mo.probability, mo.post};
}

std::vector<SingleDeviceResult> single_device_enumerate(const StateVector& state,
                                                        const std::string& device,
                                                        ReadoutBasis basis, double p_floor) {
    const auto ps = device_projectors(state.layout(), device, basis);
    std::vector<SingleDeviceResult> out;
    for (const MeasurementOutcome& mo :
         enumerate_outcomes(state, std::span<const OperatorMatrix>(ps), p_floor))
        out.push_back(SingleDeviceResult{static_cast<int>(mo.index), mo.probability, mo.post});
    return out;
}

}  // namespace cavq::meter
