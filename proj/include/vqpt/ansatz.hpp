#pragma once

// Layered variational circuit.
//
// Layer j (1-based) is W_j = V_j T_j: first the entangler T_j, then one
// three-rotation chain per qubit. Layer 1 acts first on the input, so the
// full operator is W_d ... W_2 W_1.
//
// Rotation chains, in circuit order (slot 0 acts first):
//   PT_VQC  : RZ - RY - RZ
//   U_VQSVD : RY - RX - RY
//
// Entanglers: odd j uses CX(q -> q+1) for even q with q+1 < n; even j uses
// CX(q -> (q+1) mod n) for odd q, skipping a pair whose target is the
// control. For n = 1 the entangler is the identity.
//
// Parameter layout: index = (layer * n + qubit) * 3 + slot, layer 0-based.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vqpt/kernels.hpp"
#include "vqpt/qcore.hpp"

namespace vqpt {

enum class Variant { PtVqc, UVqsvd };

std::string_view to_string(Variant v);
/// Accepts "PT_VQC"/"ptvqc" and "U_VQSVD"/"uvqsvd"; throws std::invalid_argument otherwise.
Variant variant_from_string(std::string_view s);

struct AnsatzSpec {
  int n_qubits = 1;
  int depth = 1;
  Variant variant = Variant::PtVqc;

  AnsatzSpec() = default;
  AnsatzSpec(int n, int d, Variant v);

  std::size_t param_count() const { return static_cast<std::size_t>(3 * n_qubits * depth); }
  std::size_t param_index(int layer, int qubit, int slot) const;

  friend bool operator==(const AnsatzSpec&, const AnsatzSpec&) = default;
};

/// Trainable angles in radians; no wrapping is applied.
class ParamVector {
public:
  ParamVector() = default;
  explicit ParamVector(std::vector<double> values) : values_(std::move(values)) {}
  static ParamVector zeros(std::size_t n) { return ParamVector(std::vector<double>(n, 0.0)); }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  /// Copy with values_[i] += delta.
  ParamVector shifted(std::size_t i, double delta) const;

  friend bool operator==(const ParamVector&, const ParamVector&) = default;

private:
  std::vector<double> values_;
};

/// CX (control, target) pairs of layer j (1-based).
std::vector<std::pair<int, int>> entangler_pairs(int n_qubits, int layer);

struct GateCount {
  std::size_t single_qubit = 0;
  std::size_t two_qubit = 0;
};
GateCount count_gates(const AnsatzSpec& spec);

/// Applies the ansatz to the qubits 0..n-1 of `state` (which may be larger),
/// restricted to the control sector.
void apply_ansatz_inplace(const AnsatzSpec& spec, const ParamVector& theta, StateVector& state,
                          kernels::ControlMask control = {});

/// U_VQC(theta) as a dense matrix.
UnitaryMatrix build_unitary(const AnsatzSpec& spec, const ParamVector& theta);

/// U_VQC(theta)|state>, evolved gate by gate.
StateVector apply_ansatz(const AnsatzSpec& spec, const ParamVector& theta, StateVector state);

/// Applies U_VQC to data qubits 0..n-1 only where qubit `ancilla` equals
/// `control_value`. Requires ancilla >= n and ancilla < state.n_qubits().
StateVector apply_controlled_ansatz(const AnsatzSpec& spec, const ParamVector& theta, StateVector state,
                                    int ancilla, int control_value);

} // namespace vqpt
