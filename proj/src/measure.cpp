#include "cavq/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cavq/kernels.hpp"

namespace cavq {

namespace {

// ||P psi||^2 and the unnormalized projection.
std::pair<double, std::vector<cd>> project(const StateVector& state, const OperatorMatrix& p) {
    std::vector<cd> out(state.dim());
    kern::matvec(p.data().data(), p.dim(), state.amplitudes().data(), out.data(), p.dim(),
                 p.dim());
    const double w = kern::nrm2sq(out.data(), out.size());
    return {w, std::move(out)};
}

}  // namespace

void validate_projectors(std::span<const OperatorMatrix> projectors) {
    if (projectors.empty()) throw std::invalid_argument("measure: empty projector set");
    const std::size_t d = projectors.front().dim();
    OperatorMatrix sum = OperatorMatrix::zero(projectors.front().layout());
    for (const auto& p : projectors) {
        if (p.dim() != d) throw std::invalid_argument("measure: projector dimensions differ");
        if (p.hermiticity_error() > 1e-10)
            throw std::invalid_argument("measure: projector is not Hermitian");
        const OperatorMatrix p2 = p * p;
        double idem = 0.0;
        for (std::size_t i = 0; i < d * d; ++i)
            idem = std::max(idem, std::abs(p2.data()[i] - p.data()[i]));
        if (idem > 1e-10) throw std::invalid_argument("measure: projector is not idempotent");
        sum += p;
    }
    double comp = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const cd want = (i == j) ? cd{1.0, 0.0} : cd{0.0, 0.0};
            comp = std::max(comp, std::abs(sum.at(i, j) - want));
        }
    if (comp > 1e-10) throw std::invalid_argument("measure: projector set is not complete");
}

MeasurementOutcome measure(const StateVector& state, std::span<const OperatorMatrix> projectors,
                           Rng& rng) {
    validate_projectors(projectors);
    std::vector<double> probs(projectors.size());
    std::vector<std::vector<cd>> posts(projectors.size());
    for (std::size_t k = 0; k < projectors.size(); ++k) {
        auto [w, post] = project(state, projectors[k]);
        probs[k] = std::max(0.0, w);
        posts[k] = std::move(post);
    }
    const double u = rng.uniform();
    double cum = 0.0;
    std::size_t pick = projectors.size() - 1;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        cum += probs[k];
        if (u < cum) {
            pick = k;
            break;
        }
    }
    // Guard against a zero-probability pick from the roundoff tail.
    while (probs[pick] <= 0.0 && pick > 0) --pick;
    return MeasurementOutcome{pick, probs[pick],
                              StateVector::normalized(state.layout(), std::move(posts[pick]))};
}

std::vector<MeasurementOutcome> enumerate_outcomes(const StateVector& state,
                                                   std::span<const OperatorMatrix> projectors,
                                                   double p_floor) {
    validate_projectors(projectors);
    std::vector<MeasurementOutcome> out;
    for (std::size_t k = 0; k < projectors.size(); ++k) {
        auto [w, post] = project(state, projectors[k]);
        if (w > p_floor)
            out.push_back(MeasurementOutcome{
                k, w, StateVector::normalized(state.layout(), std::move(post))});
    }
    return out;
}

}  // namespace cavq
