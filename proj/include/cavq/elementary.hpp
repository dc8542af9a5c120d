#pragma once

#include <string>

#include "cavq/operator.hpp"

namespace cavq {

enum class PauliAxis { X, Y, Z };

// Charge basis ordered (|0>, |1>) with sigma_z|0> = +|0>.
OperatorMatrix pauli(PauliAxis axis, std::string label = "d");
OperatorMatrix hadamard(std::string label = "d");
OperatorMatrix identity_op(std::string label, std::size_t dim);

// Cavity mode truncated at n_max (Fock basis |0..n_max>, dim n_max+1).
OperatorMatrix annihilation(std::size_t n_max, std::string label = "cav");
OperatorMatrix creation(std::size_t n_max, std::string label = "cav");
OperatorMatrix number_op(std::size_t n_max, std::string label = "cav");
// a + a^dagger
OperatorMatrix quadrature_x(std::size_t n_max, std::string label = "cav");

}  // namespace cavq
