#include "cavq/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace cavq {

std::vector<std::complex<double>> Rng::haar_amplitudes(std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("haar_amplitudes: dimension must be positive");
    std::vector<std::complex<double>> v(dim);
    double n2 = 0.0;
    for (auto& z : v) {
        z = complex_normal();
        n2 += std::norm(z);
    }
    if (n2 <= 0.0) return haar_amplitudes(dim);
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& z : v) z *= inv;
    return v;
}

std::pair<std::complex<double>, std::complex<double>> Rng::haar_qubit() {
    const auto v = haar_amplitudes(2);
    return {v[0], v[1]};
}

}  // namespace cavq
