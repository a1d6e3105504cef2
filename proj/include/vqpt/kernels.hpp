#pragma once

// Statevector gate kernels.
//
// kernels::apply_matrix is the production kernel (OpenMP over amplitude
// groups once the register is large enough). kernels::serial::apply_matrix is
// the plain reference loop kept for cross-checking and benchmarking.

#include <cstdint>
#include <span>

#include "vqpt/qcore.hpp"

namespace vqpt::kernels {

/// Restricts a gate to basis indices with (index & mask) == value.
struct ControlMask {
  std::uint64_t mask = 0;
  std::uint64_t value = 0;

  static ControlMask on(int qubit, int control_value)
  {
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    return {bit, control_value ? bit : 0};
  }
};

/// Groups below this count run on the calling thread.
inline constexpr std::uint64_t kParallelGroupThreshold = 1u << 11;

/// Applies `gate` (2^k x 2^k) to the listed target qubits of an n-qubit
/// amplitude array. Bit b of the gate's row/column index addresses qubit
/// targets[b]. Throws std::invalid_argument on dimension mismatch, duplicate
/// or out-of-range targets, or a control mask overlapping a target.
void apply_matrix(std::span<Complex> amps, int n_qubits, const CMatrix& gate, std::span<const int> targets,
                  ControlMask control = {});

namespace serial {
void apply_matrix(std::span<Complex> amps, int n_qubits, const CMatrix& gate, std::span<const int> targets,
                  ControlMask control = {});
} // namespace serial

/// Checks the argument contract shared by both kernels.
void validate_targets(std::size_t n_amps, int n_qubits, const CMatrix& gate, std::span<const int> targets,
                      ControlMask control);

} // namespace vqpt::kernels
