#include <cmath>
#include <stdexcept>

#include "vqpt/training.hpp"

namespace vqpt {

std::string_view to_string(Algorithm a)
{
  return a == Algorithm::PtVqc ? "PT_VQC" : "U_VQSVD";
}

Algorithm algorithm_from_string(std::string_view s)
{
  return variant_from_string(s) == Variant::PtVqc ? Algorithm::PtVqc : Algorithm::UVqsvd;
}

Variant variant_for(Algorithm a)
{
  return a == Algorithm::PtVqc ? Variant::PtVqc : Variant::UVqsvd;
}

double cost_ptvqc(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta, ShotPlan& plan)
{
  const std::uint64_t d = dim_of(spec.n_qubits);
  double acc = 0.0;
  for (std::uint64_t i = 0; i < d; ++i)
    acc += 1.0 - ptvqc_overlap_real(target, spec, theta, i, plan);
  return 2.0 * acc / static_cast<double>(d);
}

double cost_uvqsvd(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta, ShotPlan& plan)
{
  const std::uint64_t d = dim_of(spec.n_qubits);
  double acc = 0.0;
  for (std::uint64_t i = 0; i < d; ++i)
    acc += 1.0 - std::abs(uvqsvd_diagonal(target, spec, theta, i, plan));
  return acc / static_cast<double>(d);
}

double evaluate_cost(Algorithm algorithm, const UnitaryMatrix& target, const AnsatzSpec& spec,
                     const ParamVector& theta, ShotPlan& plan)
{
  return algorithm == Algorithm::PtVqc ? cost_ptvqc(target, spec, theta, plan)
                                       : cost_uvqsvd(target, spec, theta, plan);
}

namespace {

constexpr std::uint64_t kBaseKey = ~std::uint64_t{0};

ShotPlan component_plan(const ShotPlan& plan, std::uint64_t component, std::uint64_t shift)
{
  return ShotPlan{plan.shots, plan.rng.derive({component, shift})};
}

double ptvqc_component(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                       const ShotPlan& plan, std::size_t k)
{
  std::uint64_t shift = 0;
  auto cost = [&](const ParamVector& p) {
    ShotPlan local = component_plan(plan, k, shift++);
    return cost_ptvqc(target, spec, p, local);
  };
  return grad_shift4(cost, theta, k);
}

std::vector<Complex> uvqsvd_diagonals(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                                      ShotPlan& plan)
{
  std::vector<Complex> z(dim_of(spec.n_qubits));
  for (std::uint64_t i = 0; i < z.size(); ++i)
    z[i] = uvqsvd_diagonal(target, spec, theta, i, plan);
  return z;
}

double uvqsvd_component(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                        const ShotPlan& plan, std::size_t k, UvqsvdGradient mode, const std::vector<Complex>& base)
{
  std::uint64_t shift = 0;
  if (mode == UvqsvdGradient::DirectShift) {
    auto cost = [&](const ParamVector& p) {
      ShotPlan local = component_plan(plan, k, shift++);
      return cost_uvqsvd(target, spec, p, local);
    };
    return grad_shift2(cost, theta, k);
  }
  // d/dtheta_k of the mean of -|z_i|
  const auto plus = [&] {
    ShotPlan local = component_plan(plan, k, shift++);
    return uvqsvd_diagonals(target, spec, theta.shifted(k, std::numbers::pi / 2), local);
  }();
  const auto minus = [&] {
    ShotPlan local = component_plan(plan, k, shift++);
    return uvqsvd_diagonals(target, spec, theta.shifted(k, -std::numbers::pi / 2), local);
  }();
  double acc = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const Complex dz = 0.5 * (plus[i] - minus[i]);
    const double mag = std::abs(base[i]);
    if (mag > 1e-12)
      acc -= (std::conj(base[i]) * dz).real() / mag;
  }
  return acc / static_cast<double>(base.size());
}

std::vector<Complex> uvqsvd_base(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                                 const ShotPlan& plan, UvqsvdGradient mode)
{
  if (mode != UvqsvdGradient::ChainRule)
    return {};
  ShotPlan local = component_plan(plan, kBaseKey, 0);
  return uvqsvd_diagonals(target, spec, theta, local);
}

void check_gradient_args(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta)
{
  if (target.n_qubits() != spec.n_qubits)
    throw std::invalid_argument("gradient: target and ansatz dimensions differ");
  if (theta.size() != spec.param_count())
    throw std::invalid_argument("gradient: parameter count mismatch");
}

} // namespace

std::vector<double> gradient_ptvqc(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                                   const ShotPlan& plan)
{
  check_gradient_args(target, spec, theta);
  const auto p = static_cast<std::int64_t>(theta.size());
  std::vector<double> g(theta.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < p; ++k)
    g[static_cast<std::size_t>(k)] = ptvqc_component(target, spec, theta, plan, static_cast<std::size_t>(k));
  return g;
}

std::vector<double> gradient_uvqsvd(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                                    const ShotPlan& plan, UvqsvdGradient mode)
{
  check_gradient_args(target, spec, theta);
  const auto base = uvqsvd_base(target, spec, theta, plan, mode);
  const auto p = static_cast<std::int64_t>(theta.size());
  std::vector<double> g(theta.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < p; ++k)
    g[static_cast<std::size_t>(k)] =
        uvqsvd_component(target, spec, theta, plan, static_cast<std::size_t>(k), mode, base);
  return g;
}

namespace serial {

std::vector<double> gradient_ptvqc(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                                   const ShotPlan& plan)
{
  check_gradient_args(target, spec, theta);
  std::vector<double> g(theta.size());
  for (std::size_t k = 0; k < g.size(); ++k)
    g[k] = ptvqc_component(target, spec, theta, plan, k);
  return g;
}

std::vector<double> gradient_uvqsvd(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                                    const ShotPlan& plan, UvqsvdGradient mode)
{
  check_gradient_args(target, spec, theta);
  const auto base = uvqsvd_base(target, spec, theta, plan, mode);
  std::vector<double> g(theta.size());
  for (std::size_t k = 0; k < g.size(); ++k)
    g[k] = uvqsvd_component(target, spec, theta, plan, k, mode, base);
  return g;
}

} // namespace serial

} // namespace vqpt
