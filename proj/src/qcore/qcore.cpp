#include "vqpt/qcore.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vqpt {

namespace {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what)
{
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const Complex z = m(r, c);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
}

} // namespace

int qubits_for_dim(std::int64_t dim)
{
  if (dim < 1 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
  int n = 0;
  while ((std::int64_t{1} << n) < dim)
    ++n;
  return n;
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits)
{
  if (n_qubits < 0 || n_qubits > kMaxStateQubits)
    throw std::invalid_argument("StateVector: qubit count " + std::to_string(n_qubits) + " outside [0, " +
                                std::to_string(kMaxStateQubits) + "]");
  amps_ = CVector::Zero(static_cast<Eigen::Index>(dim_of(n_qubits)));
  amps_[0] = 1.0;
}

StateVector::StateVector(CVector amps) : n_qubits_(qubits_for_dim(amps.size())), amps_(std::move(amps))
{
  if (n_qubits_ > kMaxStateQubits)
    throw std::invalid_argument("StateVector: register too large");
  require_finite(amps_, "StateVector");
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index)
{
  StateVector s(n_qubits);
  if (index >= s.dim())
    throw std::out_of_range("StateVector::basis: index out of range");
  s.amps_[0] = 0.0;
  s.amps_[static_cast<Eigen::Index>(index)] = 1.0;
  return s;
}

StateVector& StateVector::normalize()
{
  const double nrm = amps_.norm();
  if (nrm == 0.0)
    throw std::domain_error("StateVector::normalize: zero vector");
  amps_ /= nrm;
  return *this;
}

Complex StateVector::inner(const StateVector& other) const
{
  if (other.dim() != dim())
    throw std::invalid_argument("StateVector::inner: dimension mismatch");
  return amps_.dot(other.amps_);
}

UnitaryMatrix::UnitaryMatrix(CMatrix m) : n_qubits_(0), m_(std::move(m))
{
  if (m_.rows() != m_.cols())
    throw std::invalid_argument("UnitaryMatrix: matrix is not square");
  n_qubits_ = qubits_for_dim(m_.rows());
  if (n_qubits_ > kMaxUnitaryQubits)
    throw std::invalid_argument("UnitaryMatrix: register too large");
  require_finite(m_, "UnitaryMatrix");
}

UnitaryMatrix UnitaryMatrix::identity(int n_qubits)
{
  if (n_qubits < 0 || n_qubits > kMaxUnitaryQubits)
    throw std::invalid_argument("UnitaryMatrix::identity: qubit count out of range");
  const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
  return UnitaryMatrix(CMatrix::Identity(d, d));
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& rhs) const
{
  if (rhs.dim() != dim())
    throw std::invalid_argument("UnitaryMatrix product: dimension mismatch");
  return UnitaryMatrix(CMatrix(m_ * rhs.m_));
}

StateVector UnitaryMatrix::operator*(const StateVector& s) const
{
  if (static_cast<std::uint64_t>(dim()) != s.dim())
    throw std::invalid_argument("UnitaryMatrix * StateVector: dimension mismatch");
  return StateVector(CVector(m_ * s.amps()));
}

double UnitaryMatrix::unitarity_error() const
{
  return (m_.adjoint() * m_ - CMatrix::Identity(dim(), dim())).norm();
}

double frobenius_distance(const UnitaryMatrix& a, const UnitaryMatrix& b)
{
  if (a.dim() != b.dim())
    throw std::invalid_argument("frobenius_distance: dimension mismatch");
  return (a.matrix() - b.matrix()).norm();
}

} // namespace vqpt
