#include "cavq/elementary.hpp"

#include <cmath>

namespace cavq {

OperatorMatrix pauli(PauliAxis axis, std::string label) {
    SystemLayout l = SystemLayout::single(std::move(label), 2);
    switch (axis) {
        case PauliAxis::X:
            return OperatorMatrix{std::move(l), {cd{0, 0}, cd{1, 0}, cd{1, 0}, cd{0, 0}}, true};
        case PauliAxis::Y:
            return OperatorMatrix{std::move(l), {cd{0, 0}, cd{0, -1}, cd{0, 1}, cd{0, 0}}, true};
        case PauliAxis::Z:
            return OperatorMatrix{std::move(l), {cd{1, 0}, cd{0, 0}, cd{0, 0}, cd{-1, 0}}, true};
    }
    throw std::invalid_argument("unknown Pauli axis");
}

OperatorMatrix hadamard(std::string label) {
    const double s = 1.0 / std::sqrt(2.0);
    return OperatorMatrix{SystemLayout::single(std::move(label), 2),
                          {cd{s, 0}, cd{s, 0}, cd{s, 0}, cd{-s, 0}},
                          true};
}

OperatorMatrix identity_op(std::string label, std::size_t dim) {
    return OperatorMatrix::identity(SystemLayout::single(std::move(label), dim));
}

OperatorMatrix annihilation(std::size_t n_max, std::string label) {
    const std::size_t d = n_max + 1;
    std::vector<cd> m(d * d, cd{0, 0});
    for (std::size_t n = 1; n < d; ++n) m[(n - 1) * d + n] = cd{std::sqrt(double(n)), 0};
    return OperatorMatrix{SystemLayout::single(std::move(label), d), std::move(m), false};
}

OperatorMatrix creation(std::size_t n_max, std::string label) {
    return annihilation(n_max, label).adjoint();
}

OperatorMatrix number_op(std::size_t n_max, std::string label) {
    const std::size_t d = n_max + 1;
    std::vector<cd> m(d * d, cd{0, 0});
    for (std::size_t n = 0; n < d; ++n) m[n * d + n] = cd{double(n), 0};
    return OperatorMatrix{SystemLayout::single(std::move(label), d), std::move(m), true};
}

OperatorMatrix quadrature_x(std::size_t n_max, std::string label) {
    OperatorMatrix a = annihilation(n_max, label);
    OperatorMatrix out = a + a.adjoint();
    return OperatorMatrix{out.layout(), std::vector<cd>(out.data().begin(), out.data().end()),
                          true};
}

}  // namespace cavq
