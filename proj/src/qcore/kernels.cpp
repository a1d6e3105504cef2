#include "vqpt/kernels.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace vqpt::kernels {

void validate_targets(std::size_t n_amps, int n_qubits, const CMatrix& gate, std::span<const int> targets,
                      ControlMask control)
{
  if (n_qubits < 0 || n_qubits > 62 || n_amps != dim_of(n_qubits))
    throw std::invalid_argument("apply_matrix: amplitude count does not match qubit count");
  const auto k = targets.size();
  if (k == 0 || k > static_cast<std::size_t>(n_qubits))
    throw std::invalid_argument("apply_matrix: need between 1 and n target qubits");
  if (gate.rows() != gate.cols() || static_cast<std::uint64_t>(gate.rows()) != dim_of(static_cast<int>(k)))
    throw std::invalid_argument("apply_matrix: gate dimension " + std::to_string(gate.rows()) + " does not match " +
                                std::to_string(k) + " target qubit(s)");
  std::uint64_t seen = 0;
  for (int q : targets) {
    if (q < 0 || q >= n_qubits)
      throw std::invalid_argument("apply_matrix: qubit index " + std::to_string(q) + " out of range");
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (seen & bit)
      throw std::invalid_argument("apply_matrix: duplicate qubit index " + std::to_string(q));
    seen |= bit;
  }
  if (control.mask & seen)
    throw std::invalid_argument("apply_matrix: control qubit is also a target");
  if (control.mask >> n_qubits)
    throw std::invalid_argument("apply_matrix: control qubit out of range");
}

namespace {

// Offsets of the 2^k amplitudes of one group relative to its base index.
std::vector<std::uint64_t> group_offsets(std::span<const int> targets)
{
  const std::uint64_t m = dim_of(static_cast<int>(targets.size()));
  std::vector<std::uint64_t> off(m, 0);
  for (std::uint64_t j = 0; j < m; ++j)
    for (std::size_t b = 0; b < targets.size(); ++b)
      if (j >> b & 1u)
        off[j] |= std::uint64_t{1} << targets[b];
  return off;
}

// Spreads the bits of g over the positions not in target_mask.
inline std::uint64_t deposit(std::uint64_t g, std::uint64_t free_mask)
{
  std::uint64_t out = 0;
  for (std::uint64_t bit = 1; free_mask; bit <<= 1) {
    const std::uint64_t low = free_mask & (~free_mask + 1);
    if (g & bit)
      out |= low;
    free_mask ^= low;
  }
  return out;
}

inline void apply_1q(Complex* a, std::uint64_t i0, std::uint64_t i1, const Complex (&u)[4])
{
  const Complex x0 = a[i0];
  const Complex x1 = a[i1];
  a[i0] = u[0] * x0 + u[1] * x1;
  a[i1] = u[2] * x0 + u[3] * x1;
}

} // namespace

void apply_matrix(std::span<Complex> amps, int n_qubits, const CMatrix& gate, std::span<const int> targets,
                  ControlMask control)
{
  validate_targets(amps.size(), n_qubits, gate, targets, control);
  const int k = static_cast<int>(targets.size());
  std::uint64_t tmask = 0;
  for (int q : targets)
    tmask |= std::uint64_t{1} << q;
  const std::uint64_t free_mask = (dim_of(n_qubits) - 1) & ~tmask;
  const auto groups = static_cast<std::int64_t>(dim_of(n_qubits - k));
  Complex* a = amps.data();

  if (k == 1) {
    const Complex u[4] = {gate(0, 0), gate(0, 1), gate(1, 0), gate(1, 1)};
    const std::uint64_t step = tmask;
#pragma omp parallel for if (static_cast<std::uint64_t>(groups) >= kParallelGroupThreshold)
    for (std::int64_t g = 0; g < groups; ++g) {
      const std::uint64_t base = deposit(static_cast<std::uint64_t>(g), free_mask);
      if ((base & control.mask) != control.value)
        continue;
      apply_1q(a, base, base | step, u);
    }
    return;
  }

  const auto off = group_offsets(targets);
  const auto m = static_cast<Eigen::Index>(off.size());
#pragma omp parallel if (static_cast<std::uint64_t>(groups) >= kParallelGroupThreshold)
  {
    CVector in(m), out(m);
#pragma omp for
    for (std::int64_t g = 0; g < groups; ++g) {
      const std::uint64_t base = deposit(static_cast<std::uint64_t>(g), free_mask);
      if ((base & control.mask) != control.value)
        continue;
      for (Eigen::Index j = 0; j < m; ++j)
        in[j] = a[base | off[static_cast<std::size_t>(j)]];
      out.noalias() = gate * in;
      for (Eigen::Index j = 0; j < m; ++j)
        a[base | off[static_cast<std::size_t>(j)]] = out[j];
    }
  }
}

namespace serial {

void apply_matrix(std::span<Complex> amps, int n_qubits, const CMatrix& gate, std::span<const int> targets,
                  ControlMask control)
{
  validate_targets(amps.size(), n_qubits, gate, targets, control);
  const std::size_t k = targets.size();
  const std::uint64_t m = dim_of(static_cast<int>(k));
  std::uint64_t tmask = 0;
  for (int q : targets)
    tmask |= std::uint64_t{1} << q;

  std::vector<std::uint64_t> idx(m);
  std::vector<Complex> in(m);
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if ((i & tmask) != 0 || (i & control.mask) != control.value)
      continue;
    for (std::uint64_t j = 0; j < m; ++j) {
      std::uint64_t full = i;
      for (std::size_t b = 0; b < k; ++b)
        if (j >> b & 1u)
          full |= std::uint64_t{1} << targets[b];
      idx[j] = full;
      in[j] = amps[full];
    }
    for (std::uint64_t r = 0; r < m; ++r) {
      Complex acc = 0.0;
      for (std::uint64_t c = 0; c < m; ++c)
        acc += gate(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
      amps[idx[r]] = acc;
    }
  }
}

} // namespace serial

} // namespace vqpt::kernels
