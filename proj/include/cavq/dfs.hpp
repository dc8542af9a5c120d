#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cavq/elementary.hpp"
#include "cavq/operator.hpp"

namespace cavq::dfs {

// Pair-bit code on two physical devices: |0_L> = |01>, |1_L> = |10>.
struct LogicalQubit {
    std::string device_a;  // i1
    std::string device_b;  // i2

    SystemLayout pair_layout() const {
        return SystemLayout{{Subsystem{device_a, 2}, Subsystem{device_b, 2}}};
    }
};

// (alpha |01> + zeta |10>) on the pair space. Amplitudes must be normalized.
StateVector encode(cd alpha, cd zeta, const LogicalQubit& qubit);

struct CodeProjection {
    double inside_weight = 0.0;
    std::optional<std::pair<cd, cd>> amplitudes;  // set when inside_weight > 1 - 1e-9
};

// Weight of a 4-dim pair state inside the code subspace, with logical
// amplitudes when the state is (numerically) fully inside.
CodeProjection project_code(const StateVector& state, const LogicalQubit& qubit);

// Population outside the code subspace of the named pair, for states on any
// ambient layout containing both devices.
double pair_leakage(const StateVector& state, const LogicalQubit& qubit);

// Physical 4x4 operators acting as the logical Pauli on the code subspace:
// X = sx (x) sx, Z = sz (x) I, Y = i X Z = sy (x) sx.
OperatorMatrix logical_pauli(PauliAxis which, const LogicalQubit& qubit);

// exp(-i phi J_z / 2) on n devices (labels d0..d{n-1}).
OperatorMatrix collective_dephasing(double phi, std::size_t n_devices);

// Propagators of the collective couplings restricted to one
// pair: U_x(gamma) = exp(-2i gamma (1 + sx sx)), U_y(gamma) = exp(-2i gamma sx sy).
OperatorMatrix ux_gate(double gamma, const LogicalQubit& qubit);
OperatorMatrix uy_gate(double gamma, const LogicalQubit& qubit);

// 2x2 restriction of a pair operator to the code subspace (basis |0_L>, |1_L>).
std::array<cd, 4> restrict_to_code(const OperatorMatrix& op, const LogicalQubit& qubit);

enum class RotationAxis { X, Y };

struct Rotation {
    RotationAxis axis;
    double gamma;  // gate angle in the exp(-2i gamma *) convention
};

// X-Y-X Euler synthesis of an arbitrary single-qubit unitary (global phase
// ignored) from the two available gate generators. Returns at most three
// rotations with gamma normalized to [0, pi); the identity yields an empty
// sequence. Throws std::invalid_argument for non-unitary targets.
std::vector<Rotation> synthesize_logical(const std::array<cd, 4>& target,
                                         const LogicalQubit& qubit);

// Compose a rotation sequence into the physical 4x4 pair operator.
OperatorMatrix compose_rotations(std::span<const Rotation> rotations, const LogicalQubit& qubit);

// Named 2x2 targets for synthesis presets: "i", "x", "y", "z", "h", "s".
std::array<cd, 4> preset_target(std::string_view name);

// Synthesized logical Hadamard on the pair (preset of the above).
OperatorMatrix logical_hadamard(const LogicalQubit& qubit);

}  // namespace cavq::dfs
