#include "vqpt/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vqpt {

namespace gates {

namespace {
UnitaryMatrix make2(Complex a, Complex b, Complex c, Complex d)
{
  CMatrix m(2, 2);
  m << a, b, c, d;
  return UnitaryMatrix(std::move(m));
}
constexpr Complex kI{0.0, 1.0};
} // namespace

UnitaryMatrix rx(double theta)
{
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return make2(c, -kI * s, -kI * s, c);
}

UnitaryMatrix ry(double theta)
{
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return make2(c, -s, s, c);
}

UnitaryMatrix rz(double theta)
{
  return make2(std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2));
}

UnitaryMatrix phase(double lambda) { return make2(1.0, 0.0, 0.0, std::polar(1.0, lambda)); }

UnitaryMatrix h()
{
  const double r = 1.0 / std::numbers::sqrt2;
  return make2(r, r, r, -r);
}

UnitaryMatrix x() { return make2(0.0, 1.0, 1.0, 0.0); }

UnitaryMatrix cx()
{
  // local index = c + 2 t
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(2, 2) = 1.0;
  m(3, 1) = 1.0;
  m(1, 3) = 1.0;
  return UnitaryMatrix(std::move(m));
}

} // namespace gates

void apply_gate_inplace(StateVector& state, const UnitaryMatrix& gate, std::span<const int> qubits,
                        kernels::ControlMask control)
{
  kernels::apply_matrix(state.data(), state.n_qubits(), gate.matrix(), qubits, control);
}

StateVector apply_gate(StateVector state, const UnitaryMatrix& gate, std::span<const int> qubits)
{
  apply_gate_inplace(state, gate, qubits);
  return state;
}

StateVector apply_gate(StateVector state, const UnitaryMatrix& gate, std::initializer_list<int> qubits)
{
  return apply_gate(std::move(state), gate, std::span<const int>(qubits.begin(), qubits.size()));
}

UnitaryMatrix haar_unitary(Eigen::Index dim, Rng& rng)
{
  if (dim < 2)
    throw std::invalid_argument("haar_unitary: dim must be >= 2");
  qubits_for_dim(dim);
  const double scale = 1.0 / std::numbers::sqrt2;
  for (;;) {
    CMatrix z(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c)
      for (Eigen::Index r = 0; r < dim; ++r) {
        const double re = rng.normal();
        const double im = rng.normal();
        z(r, c) = Complex(re, im) * scale;
      }
    Eigen::HouseholderQR<CMatrix> qr(z);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    CMatrix q = qr.householderQ();
    bool degenerate = false;
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double mag = std::abs(r(j, j));
      if (mag < 1e-12) {
        degenerate = true;
        break;
      }
      q.col(j) *= r(j, j) / mag;
    }
    if (!degenerate)
      return UnitaryMatrix(std::move(q));
  }
}

StateVector haar_state(int n_qubits, Rng& rng)
{
  const auto u = haar_unitary(static_cast<Eigen::Index>(dim_of(n_qubits)), rng);
  return StateVector(CVector(u.matrix().col(0)));
}

UnitaryMatrix qft(int n_qubits)
{
  if (n_qubits < 1)
    throw std::invalid_argument("qft: need at least one qubit");
  const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
  CMatrix f(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index j = 0; j < d; ++j) {
      // reduce j*k mod d before scaling so large products keep full precision
      const auto jk = (j * k) % d;
      f(k, j) = std::polar(norm, 2.0 * std::numbers::pi * static_cast<double>(jk) / static_cast<double>(d));
    }
  return UnitaryMatrix(std::move(f));
}

UnitaryMatrix basis_preparation(int n_qubits, std::uint64_t index)
{
  if (index >= dim_of(n_qubits))
    throw std::out_of_range("basis_preparation: index out of range");
  const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
  CMatrix p = CMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    p(static_cast<Eigen::Index>(static_cast<std::uint64_t>(j) ^ index), j) = 1.0;
  return UnitaryMatrix(std::move(p));
}

} // namespace vqpt
