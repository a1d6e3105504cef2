#include "vqpt/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "vqpt/gates.hpp"

namespace vqpt {

std::vector<std::uint64_t> sample_bits(std::span<const double> probabilities, std::uint64_t m, Rng& rng)
{
  if (probabilities.empty())
    throw std::invalid_argument("sample_bits: empty distribution");
  std::vector<double> cdf(probabilities.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    double p = probabilities[i];
    if (!(p >= -1e-12))
      throw std::invalid_argument("sample_bits: negative probability");
    acc += std::max(p, 0.0);
    cdf[i] = acc;
  }
  if (std::abs(acc - 1.0) > 1e-9)
    throw std::invalid_argument("sample_bits: probabilities do not sum to 1");

  std::vector<std::uint64_t> counts(probabilities.size(), 0);
  for (std::uint64_t s = 0; s < m; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    auto idx = static_cast<std::size_t>(it - cdf.begin());
    // u can only reach the top bin edge through rounding; keep it in range
    // and never land on a zero-probability outcome.
    idx = std::min(idx, cdf.size() - 1);
    while (idx > 0 && probabilities[idx] <= 0.0)
      --idx;
    ++counts[idx];
  }
  return counts;
}

double estimate_signed(double p0, ShotPlan& plan)
{
  p0 = std::clamp(p0, 0.0, 1.0);
  if (plan.exact())
    return 2.0 * p0 - 1.0;
  const double p[2] = {p0, 1.0 - p0};
  const auto counts = sample_bits(p, plan.shots, plan.rng);
  return 2.0 * static_cast<double>(counts[0]) / static_cast<double>(plan.shots) - 1.0;
}

namespace {

// Probability that `ancilla` reads 0.
double ancilla_zero_probability(const StateVector& s, int ancilla)
{
  const std::uint64_t bit = std::uint64_t{1} << ancilla;
  double p0 = 0.0;
  for (std::uint64_t i = 0; i < s.dim(); ++i)
    if (!(i & bit))
      p0 += std::norm(s[i]);
  return p0;
}

void check_target(const UnitaryMatrix& target, const AnsatzSpec& spec)
{
  if (target.n_qubits() != spec.n_qubits)
    throw std::invalid_argument("estimator: target and ansatz dimensions differ");
}

std::vector<int> data_qubits(int n)
{
  std::vector<int> q(static_cast<std::size_t>(n));
  std::iota(q.begin(), q.end(), 0);
  return q;
}

} // namespace

double ptvqc_ancilla_p0(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                        std::uint64_t basis_index)
{
  check_target(target, spec);
  const int n = spec.n_qubits;
  if (basis_index >= dim_of(n))
    throw std::out_of_range("ptvqc_ancilla_p0: basis index out of range");
  static const UnitaryMatrix hadamard = gates::h();
  const int anc[1] = {n};
  const auto data = data_qubits(n);

  StateVector s = StateVector::basis(n + 1, basis_index);
  apply_gate_inplace(s, hadamard, anc);
  apply_gate_inplace(s, target, data, kernels::ControlMask::on(n, 1));
  apply_ansatz_inplace(spec, theta, s, kernels::ControlMask::on(n, 0));
  apply_gate_inplace(s, hadamard, anc);
  return ancilla_zero_probability(s, n);
}

double ptvqc_overlap_real(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                          std::uint64_t basis_index, ShotPlan& plan)
{
  return estimate_signed(ptvqc_ancilla_p0(target, spec, theta, basis_index), plan);
}

OverlapProbabilities overlap_ancilla_p0(int n_qubits, const ControlledPreparation& v_prep,
                                        const ControlledPreparation& w_prep)
{
  static const UnitaryMatrix hadamard = gates::h();
  static const UnitaryMatrix p3 = gates::phase(1.5 * std::numbers::pi);
  const int anc[1] = {n_qubits};

  auto run = [&](bool imaginary) {
    StateVector s(n_qubits + 1);
    apply_gate_inplace(s, hadamard, anc);
    if (imaginary)
      apply_gate_inplace(s, p3, anc);
    v_prep(s, kernels::ControlMask::on(n_qubits, 0));
    w_prep(s, kernels::ControlMask::on(n_qubits, 1));
    apply_gate_inplace(s, hadamard, anc);
    return ancilla_zero_probability(s, n_qubits);
  };
  return {run(false), run(true)};
}

Complex overlap_re_im(int n_qubits, const ControlledPreparation& v_prep, const ControlledPreparation& w_prep,
                      ShotPlan& plan)
{
  const auto p = overlap_ancilla_p0(n_qubits, v_prep, w_prep);
  const double re = estimate_signed(p.p0_real, plan);
  const double im = -estimate_signed(p.p0_imag, plan);
  return {re, im};
}

Complex overlap_re_im(const UnitaryMatrix& v_prep, const UnitaryMatrix& w_prep, ShotPlan& plan)
{
  if (v_prep.dim() != w_prep.dim())
    throw std::invalid_argument("overlap_re_im: dimension mismatch");
  const int n = v_prep.n_qubits();
  if (n < 1)
    throw std::invalid_argument("overlap_re_im: need at least one data qubit");
  const auto data = data_qubits(n);
  auto as_prep = [&data](const UnitaryMatrix& u) {
    return [&u, &data](StateVector& s, kernels::ControlMask c) { apply_gate_inplace(s, u, data, c); };
  };
  return overlap_re_im(n, as_prep(v_prep), as_prep(w_prep), plan);
}

Complex uvqsvd_diagonal(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                        std::uint64_t basis_index, ShotPlan& plan)
{
  check_target(target, spec);
  const int n = spec.n_qubits;
  if (basis_index >= dim_of(n))
    throw std::out_of_range("uvqsvd_diagonal: basis index out of range");
  static const UnitaryMatrix xgate = gates::x();
  const auto data = data_qubits(n);

  auto prepare_basis = [&](StateVector& s, kernels::ControlMask c) {
    for (int q = 0; q < n; ++q)
      if (basis_index >> q & 1u) {
        const int tq[1] = {q};
        apply_gate_inplace(s, xgate, tq, c);
      }
  };
  auto w_prep = [&](StateVector& s, kernels::ControlMask c) {
    prepare_basis(s, c);
    apply_ansatz_inplace(spec, theta, s, c);
  };
  auto v_prep = [&](StateVector& s, kernels::ControlMask c) {
    w_prep(s, c);
    apply_gate_inplace(s, target, data, c);
  };
  return overlap_re_im(n, v_prep, w_prep, plan);
}

double wrap_phase(double phi)
{
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(phi, two_pi);
  if (w < 0.0)
    w += two_pi;
  if (w >= two_pi)
    w = 0.0;
  return w;
}

Eigenphase uvqsvd_eigenphase(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                             std::uint64_t basis_index, ShotPlan& plan)
{
  const Complex z = uvqsvd_diagonal(target, spec, theta, basis_index, plan);
  return {std::abs(z), wrap_phase(std::arg(z))};
}

} // namespace vqpt
