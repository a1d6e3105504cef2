#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "oracles.hpp"
#include "vqpt/gates.hpp"
#include "vqpt/qpuf.hpp"

using namespace vqpt;

namespace {

// U = Q diag(e^{i phi_j}) Q^dagger with a Haar eigenbasis Q.
QpufInstance with_phases(int t, int a, const std::vector<double>& phases, Rng& rng, CMatrix* basis = nullptr)
{
  const auto d = static_cast<Eigen::Index>(dim_of(t));
  const CMatrix q = haar_unitary(d, rng).matrix();
  CMatrix diag = CMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    diag(j, j) = std::exp(Complex(0, phases[static_cast<std::size_t>(j)]));
  if (basis)
    *basis = q;
  return {t, a, UnitaryMatrix(CMatrix(q * diag * q.adjoint())), 0};
}

// Expected deviation of submitting `state` against the exact generation distribution.
double expected_deviation(const PhaseEstimator& pe, const StateVector& initial,
                          const std::function<StateVector(std::uint64_t, const StateVector&)>& submit)
{
  const auto gen = pe.outcomes(initial);
  double e = 0.0;
  for (std::uint64_t k = 0; k < gen.probabilities.size(); ++k) {
    if (gen.probabilities[k] < 1e-15)
      continue;
    StateVector post(gen.blocks[k]);
    post.normalize();
    const auto ver = pe.outcomes(submit(k, post));
    for (std::uint64_t kp = 0; kp < ver.probabilities.size(); ++kp)
      e += gen.probabilities[k] * ver.probabilities[kp] * circular_deviation(k, kp, pe.a());
  }
  return e;
}

} // namespace

TEST(Qpe, RepresentablePhaseIsCertain)
{
  const double eighth = 2 * std::numbers::pi / 8;
  CMatrix u = CMatrix::Identity(2, 2);
  u(1, 1) = std::exp(Complex(0, 3 * eighth));
  const QpufInstance inst{1, 3, UnitaryMatrix(u), 0};
  Rng rng(1);
  const auto r = qpe_round(inst, StateVector::basis(1, 1), rng);
  EXPECT_EQ(r.k, 3u);
  EXPECT_NEAR(std::abs(r.post_state[1]), 1.0, 1e-12);
  const auto o = PhaseEstimator(inst).outcomes(StateVector::basis(1, 1));
  EXPECT_NEAR(o.probabilities[3], 1.0, 1e-10);
}

TEST(Qpe, ExactnessOverGrid)
{
  Rng rng(2);
  for (int t = 1; t <= 2; ++t)
    for (int a = 2; a <= 4; ++a) {
      std::vector<std::uint64_t> ks;
      std::vector<double> phases;
      for (std::uint64_t j = 0; j < dim_of(t); ++j) {
        ks.push_back(rng.next_u64() % dim_of(a));
        phases.push_back(2 * std::numbers::pi * double(ks.back()) / double(dim_of(a)));
      }
      CMatrix q;
      const auto inst = with_phases(t, a, phases, rng, &q);
      const PhaseEstimator pe(inst);
      for (std::uint64_t j = 0; j < dim_of(t); ++j) {
        const auto o = pe.outcomes(StateVector(CVector(q.col(static_cast<Eigen::Index>(j)))));
        EXPECT_NEAR(o.probabilities[ks[j]], 1.0, 1e-10) << "t=" << t << " a=" << a;
      }
    }
}

TEST(Qpe, GenericPhaseMatchesBruteForce)
{
  Rng rng(3);
  for (int t = 1; t <= 2; ++t)
    for (int a = 2; a <= 4; ++a)
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> phases;
        for (std::uint64_t j = 0; j < dim_of(t); ++j)
          phases.push_back(rng.uniform(0, 2 * std::numbers::pi));
        CMatrix q;
        const auto inst = with_phases(t, a, phases, rng, &q);
        const PhaseEstimator pe(inst);
        const CVector e0 = q.col(0);
        const auto o = pe.outcomes(StateVector(e0));
        const auto ref = oracle::qpe_distribution(inst.u.matrix(), e0, a);
        for (std::size_t k = 0; k < ref.size(); ++k)
          EXPECT_NEAR(o.probabilities[k], ref[k], 1e-10);
        const auto n_out = static_cast<double>(dim_of(a));
        const auto mode = static_cast<std::uint64_t>(std::llround(n_out * phases[0] / (2 * std::numbers::pi))) % dim_of(a);
        EXPECT_EQ(std::max_element(o.probabilities.begin(), o.probabilities.end()) - o.probabilities.begin(),
                  static_cast<std::ptrdiff_t>(mode));
        EXPECT_GE(o.probabilities[mode], 4.0 / (std::numbers::pi * std::numbers::pi));

        // generic input: against the oracle and normalised
        Rng r = rng.derive({std::uint64_t(trial)});
        const auto psi = haar_state(t, r);
        const auto og = pe.outcomes(psi);
        const auto rg = oracle::qpe_distribution(inst.u.matrix(), psi.amps(), a);
        double total = 0.0;
        for (std::size_t k = 0; k < rg.size(); ++k) {
          EXPECT_NEAR(og.probabilities[k], rg[k], 1e-10);
          total += og.blocks[k].squaredNorm();
        }
        EXPECT_NEAR(total, 1.0, 1e-10);
      }
}

TEST(Qpe, Validation)
{
  Rng rng(4);
  const auto inst = QpufInstance::sample(1, 2, 5);
  EXPECT_TRUE(inst.u.is_unitary());
  EXPECT_THROW(qpe_round(inst, StateVector(2), rng), std::invalid_argument);
  EXPECT_THROW(qpe_round(inst, StateVector(CVector::Ones(2)), rng), std::invalid_argument);
  EXPECT_THROW(QpufInstance::sample(0, 2, 1), std::invalid_argument);
  EXPECT_THROW(QpufInstance::sample(6, 7, 1), std::invalid_argument);
  QpufInstance bad{1, 2, UnitaryMatrix(CMatrix::Zero(2, 2)), 0};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Generation, Deterministic)
{
  const auto inst = QpufInstance::sample(2, 3, 7);
  const PhaseEstimator pe(inst);
  Rng a(9), b(9);
  for (int k = 0; k < 20; ++k) {
    const auto x = generation(pe, StateVector(2), a);
    const auto y = generation(pe, StateVector(2), b);
    EXPECT_EQ(x.k, y.k);
    EXPECT_EQ(x.state.amps(), y.state.amps());
    EXPECT_NEAR(x.state.norm_squared(), 1.0, 1e-12);
  }
}

TEST(Verification, EigenstateGivesZeroDeviation)
{
  Rng rng(10);
  CMatrix q;
  const auto inst = with_phases(2, 3, {2 * std::numbers::pi * 5 / 8, 2 * std::numbers::pi * 2 / 8, 0.1, 4.0}, rng, &q);
  const PhaseEstimator pe(inst);
  for (int k = 0; k < 10; ++k) {
    const auto v = verification(pe, StateVector(CVector(q.col(0))), 5, rng);
    EXPECT_EQ(v.k_prime, 5u);
    EXPECT_EQ(v.deviation, 0.0);
  }
}

TEST(Verification, SampledDeviationsMatchExactDistribution)
{
  Rng rng(11);
  const auto inst = QpufInstance::sample(1, 3, 12);
  const PhaseEstimator pe(inst);
  const auto gen = pe.outcomes(StateVector(1));
  const std::uint64_t k = static_cast<std::uint64_t>(
      std::max_element(gen.probabilities.begin(), gen.probabilities.end()) - gen.probabilities.begin());
  // a state orthogonal to the k-sector post state
  StateVector post(gen.blocks[k]);
  post.normalize();
  const StateVector orth(CVector((CVector(2) << -std::conj(post[1]), std::conj(post[0])).finished()));
  const auto ref = oracle::qpe_distribution(inst.u.matrix(), orth.amps(), 3);
  std::vector<double> dev_ref(5, 0.0);
  for (std::uint64_t kp = 0; kp < 8; ++kp)
    dev_ref[static_cast<std::size_t>(circular_deviation(k, kp, 3) * 8)] += ref[kp];

  const int n = 20000;
  std::vector<double> hist(5, 0.0);
  for (int i = 0; i < n; ++i)
    hist[static_cast<std::size_t>(verification(pe, orth, k, rng).deviation * 8)] += 1.0 / n;
  for (std::size_t b = 0; b < 5; ++b)
    EXPECT_NEAR(hist[b], dev_ref[b], 4 * std::sqrt(dev_ref[b] * (1 - dev_ref[b]) / n) + 1e-12);
}

TEST(CircularDeviation, SymmetricAndBounded)
{
  for (int a = 1; a <= 5; ++a)
    for (std::uint64_t k = 0; k < dim_of(a); ++k)
      for (std::uint64_t kp = 0; kp < dim_of(a); ++kp) {
        const double d = circular_deviation(k, kp, a);
        EXPECT_EQ(d, circular_deviation(kp, k, a));
        EXPECT_GE(d, 0.0);
        EXPECT_LE(d, 0.5);
      }
  EXPECT_DOUBLE_EQ(circular_deviation(0, 7, 3), 1.0 / 8);
  EXPECT_DOUBLE_EQ(circular_deviation(1, 5, 3), 0.5);
}

TEST(Attack, CircularArgmin)
{
  EXPECT_NEAR(phase_distance(2 * std::numbers::pi * 0.99, 1, 6), 0.01 + 1.0 / 64, 1e-12);
  std::vector<LearnedEigenpair> learned{{2 * std::numbers::pi * 0.5, StateVector::basis(1, 0)},
                                        {2 * std::numbers::pi * 0.99, StateVector::basis(1, 1)}};
  EXPECT_EQ(&attack_uvqsvd(learned, 1, 6), &learned[1].state);
  // equidistant: lowest index wins
  std::vector<LearnedEigenpair> tie{{2 * std::numbers::pi * 0.25, StateVector::basis(1, 0)},
                                    {2 * std::numbers::pi * 0.75, StateVector::basis(1, 1)}};
  EXPECT_EQ(&attack_uvqsvd(tie, 0, 2), &tie[0].state);
  EXPECT_THROW(attack_uvqsvd({}, 0, 2), std::invalid_argument);
}

TEST(Attack, PerfectLearningOnDiagonalUnitaryMatchesTrusted)
{
  // representable eigenphases: the ansatz at zero angles is the identity, so
  // the learned pairs are the exact eigenpairs
  CMatrix u = CMatrix::Zero(2, 2);
  u(0, 0) = std::exp(Complex(0, 2 * std::numbers::pi * 1 / 4));
  u(1, 1) = std::exp(Complex(0, 2 * std::numbers::pi * 3 / 4));
  const QpufInstance inst{1, 2, UnitaryMatrix(u), 0};
  const PhaseEstimator pe(inst);
  auto plan = ShotPlan::exact_plan();
  const auto learned = learned_eigenpairs(inst.u, AnsatzSpec(1, 1, Variant::UVqsvd), ParamVector::zeros(3), plan);
  ASSERT_EQ(learned.size(), 2u);
  EXPECT_NEAR(learned[0].phase, std::numbers::pi / 2, 1e-12);
  const StateVector initial(CVector((CVector(2) << 0.6, 0.8).finished()));
  const double trusted = expected_deviation(pe, initial, [](std::uint64_t, const StateVector& s) { return s; });
  const double attack = expected_deviation(
      pe, initial, [&](std::uint64_t k, const StateVector&) { return attack_uvqsvd(learned, k, 2); });
  EXPECT_NEAR(attack, trusted, 1e-12);
  EXPECT_NEAR(trusted, 0.0, 1e-12);
}

TEST(Attack, RandomPhasesApproachRandomForger)
{
  // with phases unrelated to U the attacker picks an eigenvector at random;
  // averaged over Haar U this matches a forger sending a Haar-random state.
  // (The |0> forger is not uninformed here: |0> is also the generation input.)
  Rng rng(13);
  double attack = 0.0, forger = 0.0;
  const int users = 400;
  for (int u = 0; u < users; ++u) {
    const auto inst = QpufInstance::sample(1, 3, rng.next_u64());
    const PhaseEstimator pe(inst);
    Eigen::ComplexEigenSolver<CMatrix> es(inst.u.matrix());
    std::vector<LearnedEigenpair> learned;
    for (Eigen::Index j = 0; j < 2; ++j)
      learned.push_back({rng.uniform(0, 2 * std::numbers::pi), StateVector(CVector(es.eigenvectors().col(j)))});
    attack += expected_deviation(pe, StateVector(1), [&](std::uint64_t k, const StateVector&) {
      return attack_uvqsvd(learned, k, 3);
    }) / users;
    Rng r = rng.derive({std::uint64_t(u)});
    const auto guess = haar_state(1, r);
    forger += expected_deviation(pe, StateVector(1), [&](std::uint64_t, const StateVector&) { return guess; }) / users;
  }
  EXPECT_NEAR(attack, forger, 0.02);
}

TEST(Qpe, TrustedDeviationShrinksWithAncillas)
{
  // median over users of the exact expected trusted deviation, t = 1
  std::vector<double> medians;
  for (int a = 2; a <= 4; ++a) {
    std::vector<double> devs;
    for (int u = 0; u < 41; ++u) {
      const PhaseEstimator pe(QpufInstance::sample(1, a, 1000 + static_cast<std::uint64_t>(u)));
      devs.push_back(expected_deviation(pe, StateVector(1), [](std::uint64_t, const StateVector& s) { return s; }));
    }
    std::nth_element(devs.begin(), devs.begin() + 20, devs.end());
    medians.push_back(devs[20]);
  }
  EXPECT_GE(medians[0], medians[1]);
  EXPECT_GE(medians[1], medians[2]);
}

TEST(Experiment, ReportShapeAndDeterminism)
{
  ExperimentConfig cfg;
  cfg.t_values = {1};
  cfg.a_values = {2, 3};
  cfg.users = 3;
  cfg.forgeries_factor = 2;
  cfg.seed = 4;
  cfg.attack_iters = 30;
  const auto a = run_experiment(cfg);
  const auto b = run_experiment(cfg);
  ASSERT_EQ(a.size(), 6u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].mean_deviation, b[i].mean_deviation);
    EXPECT_EQ(a[i].std_deviation, b[i].std_deviation);
    EXPECT_GE(a[i].mean_deviation, 0.0);
    EXPECT_LE(a[i].mean_deviation, 0.5);
    EXPECT_EQ(a[i].forgeries, 2 * static_cast<int>(dim_of(a[i].a)));
    EXPECT_EQ(a[i].users + a[i].failures, 3);
  }
  EXPECT_EQ(a[0].actor, Actor::Trusted);
  EXPECT_EQ(a[1].actor, Actor::UVqsvd);
  EXPECT_EQ(a[2].actor, Actor::Random);

  cfg.actors = {Actor::Trusted};
  EXPECT_EQ(run_experiment(cfg).size(), 2u);
  cfg.t_values = {6};
  cfg.a_values = {7};
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
}

TEST(Experiment, ActorNames)
{
  for (auto a : {Actor::Trusted, Actor::Random, Actor::UVqsvd})
    EXPECT_EQ(actor_from_string(to_string(a)), a);
  EXPECT_THROW(actor_from_string("eve"), std::invalid_argument);
}
