#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oracles.hpp"
#include "vqpt/estimator.hpp"
#include "vqpt/gates.hpp"
#include "vqpt/training.hpp"

using namespace vqpt;

namespace {

// Full (n+1)-qubit circuit of the tomography estimator as dense matrices:
// H_anc, diag(I, U) on the ancilla=1 block, diag(U_VQC, I) on the ancilla=0 block, H_anc.
std::pair<double, double> circuit_p0_p1(const CMatrix& u, const CMatrix& vqc, std::uint64_t i)
{
  const auto d = u.rows();
  const int n = vqpt::qubits_for_dim(d);
  const CMatrix h_anc = oracle::kron_embed(gates::h().matrix(), n, n + 1);
  CMatrix c1 = CMatrix::Identity(2 * d, 2 * d);
  c1.bottomRightCorner(d, d) = u;
  CMatrix c0 = CMatrix::Identity(2 * d, 2 * d);
  c0.topLeftCorner(d, d) = vqc;
  CVector psi = CVector::Zero(2 * d);
  psi(static_cast<Eigen::Index>(i)) = 1.0;
  const CVector xi = h_anc * c0 * c1 * h_anc * psi;
  return {xi.head(d).squaredNorm(), xi.tail(d).squaredNorm()};
}

} // namespace

TEST(SampleBits, Deterministic)
{
  Rng rng(1);
  const std::vector<double> p{1.0, 0.0};
  const auto c = sample_bits(p, 1000, rng);
  EXPECT_EQ(c[0], 1000u);
  EXPECT_EQ(c[1], 0u);

  Rng a(5), b(5);
  const std::vector<double> q{0.2, 0.3, 0.5};
  EXPECT_EQ(sample_bits(q, 500, a), sample_bits(q, 500, b));
}

TEST(SampleBits, BinomialMean)
{
  Rng rng(2);
  const std::vector<double> p{0.5, 0.5};
  const auto c = sample_bits(p, 100000, rng);
  EXPECT_NEAR(static_cast<double>(c[0]) / 1e5, 0.5, 0.01);
}

TEST(SampleBits, Validation)
{
  Rng rng(3);
  EXPECT_THROW(sample_bits(std::vector<double>{1.1, -0.1}, 10, rng), std::invalid_argument);
  EXPECT_THROW(sample_bits(std::vector<double>{0.5, 0.4}, 10, rng), std::invalid_argument);
  EXPECT_NO_THROW(sample_bits(std::vector<double>{1.0 + 1e-13, -1e-13}, 10, rng));
}

TEST(PtvqcOverlap, ExactExamples)
{
  Rng rng(11);
  const AnsatzSpec spec(2, 2, Variant::PtVqc);
  const auto theta = random_parameters(spec, rng);
  const auto vqc = build_unitary(spec, theta);
  auto plan = ShotPlan::exact_plan();
  for (std::uint64_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(ptvqc_overlap_real(vqc, spec, theta, i, plan), 1.0, 1e-12);
    EXPECT_NEAR(ptvqc_overlap_real(UnitaryMatrix(CMatrix(-vqc.matrix())), spec, theta, i, plan), -1.0, 1e-12);
  }
}

TEST(PtvqcOverlap, MatchesInnerProductAndCircuitOracle)
{
  Rng rng(12);
  auto plan = ShotPlan::exact_plan();
  for (int n = 1; n <= 5; ++n)
    for (int trial = 0; trial < 100 / 5; ++trial) {
      const AnsatzSpec spec(n, 1 + trial % 3, Variant::PtVqc);
      const auto theta = random_parameters(spec, rng);
      const auto u = haar_unitary(static_cast<Eigen::Index>(dim_of(n)), rng);
      const CMatrix vqc = oracle::ansatz_matrix(spec, theta);
      const auto i = rng.next_u64() % dim_of(n);
      const auto ii = static_cast<Eigen::Index>(i);
      const double re = u.matrix().col(ii).dot(vqc.col(ii)).real();
      EXPECT_NEAR(ptvqc_overlap_real(u, spec, theta, i, plan), re, 1e-12);

      const auto [p0, p1] = circuit_p0_p1(u.matrix(), vqc, i);
      EXPECT_NEAR(p0 + p1, 1.0, 1e-12);
      EXPECT_NEAR(p0, 0.5 + 0.5 * re, 1e-12);
      EXPECT_NEAR(ptvqc_ancilla_p0(u, spec, theta, i), p0, 1e-12);
    }
}

TEST(PtvqcOverlap, Errors)
{
  auto plan = ShotPlan::exact_plan();
  const AnsatzSpec spec(2, 1, Variant::PtVqc);
  EXPECT_THROW(ptvqc_overlap_real(UnitaryMatrix::identity(1), spec, ParamVector::zeros(6), 0, plan),
               std::invalid_argument);
  EXPECT_THROW(ptvqc_overlap_real(UnitaryMatrix::identity(2), spec, ParamVector::zeros(6), 4, plan), std::out_of_range);
}

TEST(OverlapReIm, Examples)
{
  auto plan = ShotPlan::exact_plan();
  const auto v = UnitaryMatrix::identity(1);
  const auto z = overlap_re_im(v, v, plan);
  EXPECT_NEAR(std::abs(z - Complex(1.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(overlap_re_im(UnitaryMatrix::identity(1), gates::x(), plan)), 0.0, 1e-12);
  EXPECT_THROW(overlap_re_im(UnitaryMatrix::identity(1), UnitaryMatrix::identity(2), plan), std::invalid_argument);
}

TEST(OverlapReIm, MatchesInnerProduct)
{
  Rng rng(13);
  auto plan = ShotPlan::exact_plan();
  for (int n = 1; n <= 5; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      const auto d = static_cast<Eigen::Index>(dim_of(n));
      const auto v = haar_unitary(d, rng), w = haar_unitary(d, rng);
      // <phi|psi> = <0|W^dagger V|0>
      const Complex expect = w.matrix().col(0).dot(v.matrix().col(0));
      EXPECT_NEAR(std::abs(overlap_re_im(v, w, plan) - expect), 0.0, 1e-12);
    }
}

TEST(OverlapReIm, ImaginaryCircuitProbability)
{
  // the P(3 pi/2) circuit has p0 = 1/2 - Im<phi|psi>/2
  Rng rng(14);
  const auto v = haar_unitary(4, rng), w = haar_unitary(4, rng);
  auto prep = [](const UnitaryMatrix& m) {
    return [m](StateVector& s, kernels::ControlMask c) {
      const int q[2] = {0, 1};
      apply_gate_inplace(s, m, q, c);
    };
  };
  const auto p = overlap_ancilla_p0(2, prep(v), prep(w));
  const Complex ov = w.matrix().col(0).dot(v.matrix().col(0));
  EXPECT_NEAR(p.p0_real, 0.5 + 0.5 * ov.real(), 1e-12);
  EXPECT_NEAR(p.p0_imag, 0.5 - 0.5 * ov.imag(), 1e-12);
}

TEST(UvqsvdEigenphase, Examples)
{
  auto plan = ShotPlan::exact_plan();
  const AnsatzSpec spec(1, 1, Variant::UVqsvd);
  Rng rng(15);
  const auto theta = random_parameters(spec, rng);
  for (std::uint64_t i = 0; i < 2; ++i) {
    const auto e = uvqsvd_eigenphase(UnitaryMatrix::identity(1), spec, theta, i, plan);
    EXPECT_NEAR(e.magnitude, 1.0, 1e-12);
    EXPECT_NEAR(std::min(e.phase, 2 * std::numbers::pi - e.phase), 0.0, 1e-9);
  }
  const auto u = gates::phase(std::numbers::pi / 4);
  const auto e = uvqsvd_eigenphase(u, spec, ParamVector::zeros(3), 1, plan);
  EXPECT_NEAR(e.magnitude, 1.0, 1e-12);
  EXPECT_NEAR(e.phase, std::numbers::pi / 4, 1e-12);
}

TEST(UvqsvdDiagonal, MatchesRotatedMatrix)
{
  Rng rng(16);
  auto plan = ShotPlan::exact_plan();
  for (int n = 1; n <= 4; ++n) {
    const AnsatzSpec spec(n, 2, Variant::UVqsvd);
    const auto theta = random_parameters(spec, rng);
    const auto u = haar_unitary(static_cast<Eigen::Index>(dim_of(n)), rng);
    const CMatrix vqc = oracle::ansatz_matrix(spec, theta);
    const CMatrix rot = vqc.adjoint() * u.matrix() * vqc;
    for (std::uint64_t i = 0; i < dim_of(n); ++i)
      EXPECT_NEAR(std::abs(uvqsvd_diagonal(u, spec, theta, i, plan) - rot(Eigen::Index(i), Eigen::Index(i))), 0.0,
                  1e-12);
  }
}

TEST(WrapPhase, Range)
{
  EXPECT_NEAR(wrap_phase(-0.5), 2 * std::numbers::pi - 0.5, 1e-15);
  EXPECT_NEAR(wrap_phase(7.0), 7.0 - 2 * std::numbers::pi, 1e-15);
  EXPECT_EQ(wrap_phase(0.0), 0.0);
  EXPECT_LT(wrap_phase(2 * std::numbers::pi), 2 * std::numbers::pi);
}

TEST(ShotMode, Unbiased)
{
  Rng rng(17);
  const double p0 = 0.8;
  double acc = 0.0;
  const int reps = 2000;
  for (int r = 0; r < reps; ++r) {
    ShotPlan plan{100, rng.derive({std::uint64_t(r)})};
    acc += estimate_signed(p0, plan);
  }
  // per-run sd of 2 p_hat - 1 is 2 sqrt(p(1-p)/m) = 0.08
  EXPECT_NEAR(acc / reps, 2 * p0 - 1, 4 * 0.08 / std::sqrt(double(reps)));
}

TEST(ShotMode, ErrorScalesAsInverseSqrtShots)
{
  const double p0 = 0.3;
  std::vector<double> xs, ys;
  for (std::uint64_t m : {100u, 1000u, 10000u, 100000u}) {
    double sq = 0.0;
    const int reps = 200;
    for (int r = 0; r < reps; ++r) {
      ShotPlan plan{m, Rng(99).derive({m, std::uint64_t(r)})};
      const double e = estimate_signed(p0, plan) - (2 * p0 - 1);
      sq += e * e;
    }
    xs.push_back(std::log10(double(m)));
    ys.push_back(0.5 * std::log10(sq / reps));
  }
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k] / 4;
    my += ys[k] / 4;
  }
  double num = 0, den = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    num += (xs[k] - mx) * (ys[k] - my);
    den += (xs[k] - mx) * (xs[k] - mx);
  }
  EXPECT_NEAR(num / den, -0.5, 0.1);
}

TEST(ShotMode, ExactPlanIsDeterministic)
{
  Rng rng(18);
  const AnsatzSpec spec(2, 1, Variant::PtVqc);
  const auto theta = random_parameters(spec, rng);
  const auto u = haar_unitary(4, rng);
  ShotPlan a{0, Rng(1)}, b{0, Rng(2)};
  EXPECT_EQ(ptvqc_overlap_real(u, spec, theta, 2, a), ptvqc_overlap_real(u, spec, theta, 2, b));
}
