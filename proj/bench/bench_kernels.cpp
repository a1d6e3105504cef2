// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "vqpt/gates.hpp"
#include "vqpt/kernels.hpp"
#include "vqpt/training.hpp"

using namespace vqpt;

namespace {

CVector random_amps(int n)
{
  Rng rng(1);
  CVector v(Eigen::Index{1} << n);
  for (auto& z : v)
    z = Complex(rng.normal(), rng.normal());
  return v.normalized();
}

template <bool Parallel>
void BM_ApplyTwoQubitGate(benchmark::State& state)
{
  const int n = static_cast<int>(state.range(0));
  CVector amps = random_amps(n);
  Rng rng(2);
  const CMatrix gate = haar_unitary(4, rng).matrix();
  const int targets[] = {0, n - 1};
  for (auto _ : state) {
    std::span<Complex> view(amps.data(), static_cast<std::size_t>(amps.size()));
    if constexpr (Parallel)
      kernels::apply_matrix(view, n, gate, targets);
    else
      kernels::serial::apply_matrix(view, n, gate, targets);
    benchmark::DoNotOptimize(amps.data());
  }
  state.SetItemsProcessed(state.iterations() * amps.size());
}

template <bool Parallel>
void BM_GradientPtvqc(benchmark::State& state)
{
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  const AnsatzSpec spec(n, 2, Variant::PtVqc);
  const auto u = haar_unitary(static_cast<Eigen::Index>(dim_of(n)), rng);
  const auto theta = random_parameters(spec, rng);
  const auto plan = ShotPlan::exact_plan();
  for (auto _ : state) {
    auto g = Parallel ? gradient_ptvqc(u, spec, theta, plan) : serial::gradient_ptvqc(u, spec, theta, plan);
    benchmark::DoNotOptimize(g.data());
  }
}

template <bool Parallel>
void BM_GradientUvqsvd(benchmark::State& state)
{
  const int n = static_cast<int>(state.range(0));
  Rng rng(4);
  const AnsatzSpec spec(n, 2, Variant::UVqsvd);
  const auto u = haar_unitary(static_cast<Eigen::Index>(dim_of(n)), rng);
  const auto theta = random_parameters(spec, rng);
  const auto plan = ShotPlan::exact_plan();
  for (auto _ : state) {
    auto g = Parallel ? gradient_uvqsvd(u, spec, theta, plan) : serial::gradient_uvqsvd(u, spec, theta, plan);
    benchmark::DoNotOptimize(g.data());
  }
}

} // namespace

BENCHMARK(BM_ApplyTwoQubitGate<false>)->Name("apply_matrix/serial")->DenseRange(10, 20, 2);
BENCHMARK(BM_ApplyTwoQubitGate<true>)->Name("apply_matrix/openmp")->DenseRange(10, 20, 2);
BENCHMARK(BM_GradientPtvqc<false>)->Name("gradient_ptvqc/serial")->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GradientPtvqc<true>)->Name("gradient_ptvqc/openmp")->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GradientUvqsvd<false>)->Name("gradient_uvqsvd/serial")->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GradientUvqsvd<true>)->Name("gradient_uvqsvd/openmp")->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
