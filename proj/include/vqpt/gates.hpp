#pragma once

#include <initializer_list>
#include <span>

#include "vqpt/kernels.hpp"
#include "vqpt/qcore.hpp"
#include "vqpt/rng.hpp"

namespace vqpt {

// Rotation convention: R_P(theta) = exp(-i theta P / 2).
namespace gates {
UnitaryMatrix rx(double theta);
UnitaryMatrix ry(double theta);
UnitaryMatrix rz(double theta);
/// diag(1, e^{i lambda})
UnitaryMatrix phase(double lambda);
UnitaryMatrix h();
UnitaryMatrix x();
/// Two-qubit CX in the local basis of apply_gate: gate qubit 0 is the
/// control, gate qubit 1 the target.
UnitaryMatrix cx();
} // namespace gates

/// (G (x) I_rest)|state> with gate qubit b acting on qubits[b]. Norm-preserving
/// for unitary G. Throws std::invalid_argument on dimension mismatch or bad
/// qubit indices.
StateVector apply_gate(StateVector state, const UnitaryMatrix& gate, std::span<const int> qubits);
StateVector apply_gate(StateVector state, const UnitaryMatrix& gate, std::initializer_list<int> qubits);

/// In-place variant, optionally restricted to a control sector.
void apply_gate_inplace(StateVector& state, const UnitaryMatrix& gate, std::span<const int> qubits,
                        kernels::ControlMask control = {});

/// Haar-distributed unitary: QR of a complex Ginibre matrix with Q's columns
/// rescaled by the phases of diag(R).
UnitaryMatrix haar_unitary(Eigen::Index dim, Rng& rng);

/// Haar-random pure state (first column of a Haar unitary).
StateVector haar_state(int n_qubits, Rng& rng);

/// Entry (k, j) = exp(2 pi i j k / 2^n) / 2^{n/2}.
UnitaryMatrix qft(int n_qubits);

/// Maps |0...0> to |index> with X gates on the set bits of index.
UnitaryMatrix basis_preparation(int n_qubits, std::uint64_t index);

} // namespace vqpt
