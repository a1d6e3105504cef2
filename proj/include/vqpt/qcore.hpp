#pragma once

// Dense complex state vectors and operators.
//
// Bit ordering: qubit q is bit q of the basis index, so qubit 0 is the least
// significant bit. |01> in ket notation (qubit 1 first) is index 1.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace vqpt {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Largest register for operations that materialise a full 2^n x 2^n matrix.
inline constexpr int kMaxUnitaryQubits = 10;
/// Largest register for pure statevector evolution.
inline constexpr int kMaxStateQubits = 12;

inline std::uint64_t dim_of(int n_qubits) { return std::uint64_t{1} << n_qubits; }

/// Returns log2(dim), throws std::invalid_argument unless dim is a power of two >= 1.
int qubits_for_dim(std::int64_t dim);

class StateVector {
public:
  /// |0...0> on n qubits.
  explicit StateVector(int n_qubits = 0);
  /// Takes ownership of amplitudes; length must be 2^n and all entries finite.
  explicit StateVector(CVector amps);

  static StateVector basis(int n_qubits, std::uint64_t index);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t dim() const { return static_cast<std::uint64_t>(amps_.size()); }

  const CVector& amps() const { return amps_; }
  Complex operator[](std::uint64_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }
  Complex& operator[](std::uint64_t i) { return amps_[static_cast<Eigen::Index>(i)]; }

  std::span<Complex> data() { return {amps_.data(), static_cast<std::size_t>(amps_.size())}; }
  std::span<const Complex> data() const { return {amps_.data(), static_cast<std::size_t>(amps_.size())}; }

  double norm_squared() const { return amps_.squaredNorm(); }
  /// Throws std::domain_error on a zero vector.
  StateVector& normalize();

  /// <this|other>
  Complex inner(const StateVector& other) const;

private:
  int n_qubits_;
  CVector amps_;
};

class UnitaryMatrix {
public:
  UnitaryMatrix() : UnitaryMatrix(identity(0)) {}
  /// Square, power-of-two dimension, finite entries. Unitarity is not checked
  /// here; see unitarity_error().
  explicit UnitaryMatrix(CMatrix m);

  static UnitaryMatrix identity(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  UnitaryMatrix adjoint() const { return UnitaryMatrix(CMatrix(m_.adjoint())); }
  UnitaryMatrix operator*(const UnitaryMatrix& rhs) const;
  StateVector operator*(const StateVector& s) const;

  /// ||U^dagger U - I||_F
  double unitarity_error() const;
  bool is_unitary(double tol = 1e-8) const { return unitarity_error() <= tol; }

private:
  int n_qubits_;
  CMatrix m_;
};

/// Frobenius norm of a - b.
double frobenius_distance(const UnitaryMatrix& a, const UnitaryMatrix& b);

} // namespace vqpt
