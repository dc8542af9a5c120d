#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace cavq {

// Deterministic random source. All distributions are implemented on top of
// the raw mt19937_64 stream so results are reproducible across standard
// libraries (std::*_distribution are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller on two fresh uniforms.
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    std::complex<double> complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

    // Haar-random pure state amplitudes of the given dimension.
    std::vector<std::complex<double>> haar_amplitudes(std::size_t dim);

    // Haar-random single-qubit amplitude pair.
    std::pair<std::complex<double>, std::complex<double>> haar_qubit();

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace cavq
