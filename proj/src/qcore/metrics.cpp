#include "vqpt/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace vqpt {

double fidelity_pure(const StateVector& a, const StateVector& b)
{
  if (a.dim() != b.dim())
    throw std::invalid_argument("fidelity_pure: dimension mismatch");
  return std::clamp(std::norm(a.inner(b)), 0.0, 1.0);
}

double similarity(const UnitaryMatrix& a, const UnitaryMatrix& b)
{
  if (a.dim() != b.dim())
    throw std::invalid_argument("similarity: dimension mismatch");
  return 1.0 - (a.matrix() - b.matrix()).norm() / a.matrix().norm();
}

double mean_basis_fidelity(const UnitaryMatrix& target, const UnitaryMatrix& predicted)
{
  if (target.dim() != predicted.dim())
    throw std::invalid_argument("mean_basis_fidelity: dimension mismatch");
  const auto& u = target.matrix();
  const auto& v = predicted.matrix();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < u.cols(); ++i)
    acc += std::norm(u.col(i).dot(v.col(i)));
  return acc / static_cast<double>(u.cols());
}

} // namespace vqpt
