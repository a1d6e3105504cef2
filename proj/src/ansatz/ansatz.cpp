#include "vqpt/ansatz.hpp"

#include <stdexcept>

#include "vqpt/gates.hpp"

namespace vqpt {

std::string_view to_string(Variant v)
{
  return v == Variant::PtVqc ? "PT_VQC" : "U_VQSVD";
}

Variant variant_from_string(std::string_view s)
{
  if (s == "PT_VQC" || s == "ptvqc" || s == "pt_vqc")
    return Variant::PtVqc;
  if (s == "U_VQSVD" || s == "uvqsvd" || s == "u_vqsvd")
    return Variant::UVqsvd;
  throw std::invalid_argument("unknown ansatz variant '" + std::string(s) + "'");
}

AnsatzSpec::AnsatzSpec(int n, int d, Variant v) : n_qubits(n), depth(d), variant(v)
{
  if (n < 1 || n > kMaxStateQubits)
    throw std::invalid_argument("AnsatzSpec: qubit count out of range");
  if (d < 1)
    throw std::invalid_argument("AnsatzSpec: depth must be >= 1");
}

std::size_t AnsatzSpec::param_index(int layer, int qubit, int slot) const
{
  return static_cast<std::size_t>((layer * n_qubits + qubit) * 3 + slot);
}

ParamVector ParamVector::shifted(std::size_t i, double delta) const
{
  ParamVector out(*this);
  out.values_.at(i) += delta;
  return out;
}

std::vector<std::pair<int, int>> entangler_pairs(int n_qubits, int layer)
{
  std::vector<std::pair<int, int>> pairs;
  if (layer % 2 == 1) {
    for (int q = 0; q + 1 < n_qubits; q += 2)
      pairs.emplace_back(q, q + 1);
  } else {
    for (int q = 1; q < n_qubits; q += 2) {
      const int t = (q + 1) % n_qubits;
      if (t != q)
        pairs.emplace_back(q, t);
    }
  }
  return pairs;
}

GateCount count_gates(const AnsatzSpec& spec)
{
  GateCount c;
  for (int j = 1; j <= spec.depth; ++j) {
    c.single_qubit += static_cast<std::size_t>(3 * spec.n_qubits);
    c.two_qubit += entangler_pairs(spec.n_qubits, j).size();
  }
  return c;
}

namespace {

UnitaryMatrix rotation(Variant v, int slot, double angle)
{
  if (v == Variant::PtVqc)
    return slot == 1 ? gates::ry(angle) : gates::rz(angle);
  return slot == 1 ? gates::rx(angle) : gates::ry(angle);
}

void check_params(const AnsatzSpec& spec, const ParamVector& theta)
{
  if (theta.size() != spec.param_count())
    throw std::invalid_argument("ansatz: expected " + std::to_string(spec.param_count()) + " parameters, got " +
                                std::to_string(theta.size()));
}

} // namespace

void apply_ansatz_inplace(const AnsatzSpec& spec, const ParamVector& theta, StateVector& state,
                          kernels::ControlMask control)
{
  check_params(spec, theta);
  if (state.n_qubits() < spec.n_qubits)
    throw std::invalid_argument("ansatz: state has fewer qubits than the ansatz");
  static const UnitaryMatrix cx = gates::cx();
  for (int layer = 0; layer < spec.depth; ++layer) {
    for (auto [c, t] : entangler_pairs(spec.n_qubits, layer + 1)) {
      const int q[2] = {c, t};
      apply_gate_inplace(state, cx, q, control);
    }
    for (int q = 0; q < spec.n_qubits; ++q) {
      const int tq[1] = {q};
      for (int slot = 0; slot < 3; ++slot)
        apply_gate_inplace(state, rotation(spec.variant, slot, theta[spec.param_index(layer, q, slot)]), tq,
                           control);
    }
  }
}

StateVector apply_ansatz(const AnsatzSpec& spec, const ParamVector& theta, StateVector state)
{
  if (state.n_qubits() != spec.n_qubits)
    throw std::invalid_argument("apply_ansatz: state dimension does not match the ansatz");
  apply_ansatz_inplace(spec, theta, state);
  return state;
}

StateVector apply_controlled_ansatz(const AnsatzSpec& spec, const ParamVector& theta, StateVector state,
                                    int ancilla, int control_value)
{
  if (ancilla < spec.n_qubits)
    throw std::invalid_argument("apply_controlled_ansatz: ancilla collides with a data qubit");
  if (ancilla >= state.n_qubits())
    throw std::invalid_argument("apply_controlled_ansatz: ancilla index out of range");
  if (control_value != 0 && control_value != 1)
    throw std::invalid_argument("apply_controlled_ansatz: control value must be 0 or 1");
  apply_ansatz_inplace(spec, theta, state, kernels::ControlMask::on(ancilla, control_value));
  return state;
}

UnitaryMatrix build_unitary(const AnsatzSpec& spec, const ParamVector& theta)
{
  check_params(spec, theta);
  if (spec.n_qubits > kMaxUnitaryQubits)
    throw std::invalid_argument("build_unitary: register too large for a dense matrix");
  const auto d = static_cast<Eigen::Index>(dim_of(spec.n_qubits));
  CMatrix u(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    StateVector col = StateVector::basis(spec.n_qubits, static_cast<std::uint64_t>(j));
    apply_ansatz_inplace(spec, theta, col);
    u.col(j) = col.amps();
  }
  return UnitaryMatrix(std::move(u));
}

} // namespace vqpt
