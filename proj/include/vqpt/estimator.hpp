#pragma once

// Overlap estimators built from ancilla interference circuits.
//
// Every estimator simulates the full (n+1)-qubit circuit with the data
// register on qubits 0..n-1 and the ancilla on qubit n, then either reads the
// exact ancilla marginal p0 (shots == 0) or draws `shots` independent
// ancilla outcomes from it. The data register is never collapsed.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "vqpt/ansatz.hpp"
#include "vqpt/qcore.hpp"
#include "vqpt/rng.hpp"

namespace vqpt {

struct ShotPlan {
  std::uint64_t shots = 0;
  Rng rng{0};

  bool exact() const { return shots == 0; }
  static ShotPlan exact_plan() { return {}; }
};

/// Multinomial counts of m independent draws from `probabilities`.
/// Entries down to -1e-12 are clamped to zero; the sum must be 1 within 1e-9.
std::vector<std::uint64_t> sample_bits(std::span<const double> probabilities, std::uint64_t m, Rng& rng);

/// 2 p0 - 1 for an exact p0 or its m-shot estimate.
double estimate_signed(double p0, ShotPlan& plan);

/// Exact ancilla p0 of the tomography circuit: H on the ancilla, controlled-U
/// (ancilla = 1) and open-controlled U_VQC (ancilla = 0) on |i>, H.
double ptvqc_ancilla_p0(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                        std::uint64_t basis_index);

/// Estimate of Re<i|U^dagger U_VQC|i> = 2 p0 - 1.
double ptvqc_overlap_real(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                          std::uint64_t basis_index, ShotPlan& plan);

/// Applies a state preparation to data qubits 0..n-1 of a larger register,
/// restricted to the given control sector.
using ControlledPreparation = std::function<void(StateVector&, kernels::ControlMask)>;

struct OverlapProbabilities {
  double p0_real = 0.0;
  double p0_imag = 0.0;
};

/// Exact ancilla p0 of the real-part circuit H, C0 V, C1 W, H and of the
/// imaginary-part circuit that inserts P(3 pi / 2) after the first H.
OverlapProbabilities overlap_ancilla_p0(int n_qubits, const ControlledPreparation& v_prep,
                                        const ControlledPreparation& w_prep);

/// Estimate of <phi|psi> with |psi> = V|0..0>, |phi> = W|0..0>.
/// Re = 2 p0 - 1 from the real-part circuit; Im = 1 - 2 p0 from the
/// P(3 pi / 2) circuit, whose p0 equals 1/2 - Im<phi|psi>/2.
Complex overlap_re_im(int n_qubits, const ControlledPreparation& v_prep, const ControlledPreparation& w_prep,
                      ShotPlan& plan);
Complex overlap_re_im(const UnitaryMatrix& v_prep, const UnitaryMatrix& w_prep, ShotPlan& plan);

/// <i|U_VQC^dagger U U_VQC|i> measured with V = U U_VQC X(i), W = U_VQC X(i).
Complex uvqsvd_diagonal(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                        std::uint64_t basis_index, ShotPlan& plan);

struct Eigenphase {
  double magnitude = 0.0;
  /// In [0, 2 pi).
  double phase = 0.0;
};

Eigenphase uvqsvd_eigenphase(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                             std::uint64_t basis_index, ShotPlan& plan);

/// Wraps an angle into [0, 2 pi).
double wrap_phase(double phi);

} // namespace vqpt
