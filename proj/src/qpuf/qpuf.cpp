#include "vqpt/qpuf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "vqpt/estimator.hpp"
#include "vqpt/gates.hpp"

namespace vqpt {

QpufInstance QpufInstance::sample(int t, int a, std::uint64_t seed)
{
  if (t < 1 || a < 1)
    throw std::invalid_argument("QpufInstance: t and a must be >= 1");
  Rng rng(seed);
  QpufInstance inst{t, a, haar_unitary(static_cast<Eigen::Index>(dim_of(t)), rng), seed};
  inst.validate();
  return inst;
}

void QpufInstance::validate() const
{
  if (t < 1 || a < 1)
    throw std::invalid_argument("QpufInstance: t and a must be >= 1");
  if (t + a > kMaxStateQubits)
    throw std::invalid_argument("QpufInstance: t + a exceeds the simulator ceiling");
  if (u.n_qubits() != t)
    throw std::invalid_argument("QpufInstance: U does not act on t qubits");
  if (!u.is_unitary())
    throw std::invalid_argument("QpufInstance: U is not unitary");
}

PhaseEstimator::PhaseEstimator(const QpufInstance& instance)
    : t_(instance.t), a_(instance.a), inverse_qft_(qft(instance.a).adjoint())
{
  instance.validate();
  UnitaryMatrix p = instance.u;
  for (int j = 0; j < a_; ++j) {
    powers_.push_back(p);
    p = p * p;
  }
}

PhaseEstimator::Outcomes PhaseEstimator::outcomes(const StateVector& input) const
{
  if (input.n_qubits() != t_)
    throw std::invalid_argument("phase estimation: input is not a t-qubit state");
  if (std::abs(input.norm_squared() - 1.0) > 1e-9)
    throw std::invalid_argument("phase estimation: input is not normalised");

  static const UnitaryMatrix hadamard = gates::h();
  const int total = t_ + a_;
  CVector full = CVector::Zero(static_cast<Eigen::Index>(dim_of(total)));
  full.head(static_cast<Eigen::Index>(dim_of(t_))) = input.amps();
  StateVector s(std::move(full));

  std::vector<int> target(static_cast<std::size_t>(t_));
  std::iota(target.begin(), target.end(), 0);
  std::vector<int> ancilla(static_cast<std::size_t>(a_));
  std::iota(ancilla.begin(), ancilla.end(), t_);

  for (int q : ancilla) {
    const int tq[1] = {q};
    apply_gate_inplace(s, hadamard, tq);
  }
  for (int j = 0; j < a_; ++j)
    apply_gate_inplace(s, powers_[static_cast<std::size_t>(j)], target, kernels::ControlMask::on(t_ + j, 1));
  apply_gate_inplace(s, inverse_qft_, ancilla);

  const auto block = static_cast<Eigen::Index>(dim_of(t_));
  Outcomes out;
  out.probabilities.resize(dim_of(a_));
  out.blocks.resize(dim_of(a_));
  for (std::uint64_t k = 0; k < dim_of(a_); ++k) {
    out.blocks[k] = s.amps().segment(static_cast<Eigen::Index>(k) * block, block);
    out.probabilities[k] = out.blocks[k].squaredNorm();
  }
  // absorb rounding so the distribution sums to one
  const double total_p = std::accumulate(out.probabilities.begin(), out.probabilities.end(), 0.0);
  for (auto& p : out.probabilities)
    p /= total_p;
  return out;
}

QpeResult qpe_round(const PhaseEstimator& pe, const StateVector& input, Rng& rng)
{
  auto o = pe.outcomes(input);
  const auto counts = sample_bits(o.probabilities, 1, rng);
  const auto k = static_cast<std::uint64_t>(std::find(counts.begin(), counts.end(), 1u) - counts.begin());
  StateVector post(std::move(o.blocks[k]));
  post.normalize();
  return {k, std::move(post)};
}

QpeResult qpe_round(const QpufInstance& instance, const StateVector& input, Rng& rng)
{
  return qpe_round(PhaseEstimator(instance), input, rng);
}

double circular_deviation(std::uint64_t k, std::uint64_t k_prime, int a)
{
  const std::uint64_t n = dim_of(a);
  const std::uint64_t diff = k > k_prime ? k - k_prime : k_prime - k;
  return static_cast<double>(std::min(diff, n - diff)) / static_cast<double>(n);
}

ChallengeRecord generation(const PhaseEstimator& pe, const StateVector& initial, Rng& rng)
{
  auto r = qpe_round(pe, initial, rng);
  return {r.k, std::move(r.post_state), std::nullopt, std::nullopt};
}

Verification verification(const PhaseEstimator& pe, const StateVector& submitted, std::uint64_t k, Rng& rng)
{
  const auto r = qpe_round(pe, submitted, rng);
  return {r.k, circular_deviation(k, r.k, pe.a())};
}

std::vector<LearnedEigenpair> learned_eigenpairs(const UnitaryMatrix& u, const AnsatzSpec& spec,
                                                 const ParamVector& theta, ShotPlan& plan)
{
  const UnitaryMatrix vqc = build_unitary(spec, theta);
  std::vector<LearnedEigenpair> out;
  for (std::uint64_t i = 0; i < dim_of(spec.n_qubits); ++i) {
    const auto e = uvqsvd_eigenphase(u, spec, theta, i, plan);
    out.push_back({e.phase, StateVector(CVector(vqc.matrix().col(static_cast<Eigen::Index>(i))))});
  }
  return out;
}

double phase_distance(double phase, std::uint64_t k, int a)
{
  double d = std::abs(phase / (2.0 * std::numbers::pi) - static_cast<double>(k) / static_cast<double>(dim_of(a)));
  d = std::fmod(d, 1.0);
  return std::min(d, 1.0 - d);
}

const StateVector& attack_uvqsvd(const std::vector<LearnedEigenpair>& learned, std::uint64_t k, int a)
{
  if (learned.empty())
    throw std::invalid_argument("attack_uvqsvd: no learned eigenpairs");
  std::size_t best = 0;
  double best_d = phase_distance(learned[0].phase, k, a);
  for (std::size_t i = 1; i < learned.size(); ++i) {
    const double d = phase_distance(learned[i].phase, k, a);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return learned[best].state;
}

std::string_view to_string(Actor a)
{
  switch (a) {
  case Actor::Trusted:
    return "trusted";
  case Actor::Random:
    return "random";
  case Actor::UVqsvd:
    return "uvqsvd";
  }
  return "unknown";
}

Actor actor_from_string(std::string_view s)
{
  if (s == "trusted")
    return Actor::Trusted;
  if (s == "random")
    return Actor::Random;
  if (s == "uvqsvd")
    return Actor::UVqsvd;
  throw std::invalid_argument("unknown actor '" + std::string(s) + "'");
}

int attack_depth_for(const ExperimentConfig& config, int t)
{
  if (config.attack_depths.empty())
    throw std::invalid_argument("attack depths are empty");
  const auto idx = std::min(static_cast<std::size_t>(t - 1), config.attack_depths.size() - 1);
  return config.attack_depths[idx];
}

namespace {

struct UserOutcome {
  // per actor, indexed like config.actors
  std::vector<double> mean_deviation;
  std::vector<bool> failed;
};

UserOutcome run_user(const ExperimentConfig& config, int t, int a, int user)
{
  const Rng user_rng = Rng(config.seed).derive(
      {static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(user)});
  const auto instance = QpufInstance::sample(t, a, user_rng.derive({0}).seed());
  const PhaseEstimator pe(instance);
  const auto n_actors = config.actors.size();
  UserOutcome out{std::vector<double>(n_actors, 0.0), std::vector<bool>(n_actors, false)};

  StateVector initial(t);
  if (config.haar_generation_input) {
    Rng r = user_rng.derive({1});
    initial = haar_state(t, r);
  }
  StateVector random_state(t);
  if (config.random_state == RandomForgerState::Haar) {
    Rng r = user_rng.derive({2});
    random_state = haar_state(t, r);
  }

  std::vector<LearnedEigenpair> learned;
  const bool wants_attack = std::find(config.actors.begin(), config.actors.end(), Actor::UVqsvd) != config.actors.end();
  bool attack_failed = false;
  if (wants_attack) {
    const AnsatzSpec spec(t, attack_depth_for(config, t), Variant::UVqsvd);
    TrainConfig tc;
    tc.max_iters = config.attack_iters;
    tc.cost_threshold = config.attack_threshold;
    tc.learning_rate = config.attack_learning_rate;
    tc.shots = config.attack_shots;
    tc.seed = user_rng.derive({3}).seed();
    try {
      const auto trace = train(Algorithm::UVqsvd, instance.u, spec, tc);
      if (trace.status == TrainStatus::NonFinite) {
        attack_failed = true;
      } else {
        ShotPlan plan{config.attack_shots, user_rng.derive({4})};
        learned = learned_eigenpairs(instance.u, spec, trace.final_theta, plan);
      }
    } catch (const std::exception&) {
      attack_failed = true;
    }
  }

  const int forgeries = config.forgeries_factor * static_cast<int>(dim_of(a));
  for (int f = 0; f < forgeries; ++f) {
    Rng gen_rng = user_rng.derive({5, static_cast<std::uint64_t>(f)});
    const auto challenge = generation(pe, initial, gen_rng);
    for (std::size_t ai = 0; ai < n_actors; ++ai) {
      const Actor actor = config.actors[ai];
      if (actor == Actor::UVqsvd && attack_failed)
        continue;
      Rng ver_rng = user_rng.derive({6, static_cast<std::uint64_t>(f), static_cast<std::uint64_t>(actor)});
      const StateVector& submitted = actor == Actor::Trusted  ? challenge.state
                                     : actor == Actor::Random ? random_state
                                                              : attack_uvqsvd(learned, challenge.k, a);
      out.mean_deviation[ai] += verification(pe, submitted, challenge.k, ver_rng).deviation;
    }
  }
  for (std::size_t ai = 0; ai < n_actors; ++ai) {
    out.mean_deviation[ai] /= static_cast<double>(forgeries);
    out.failed[ai] = config.actors[ai] == Actor::UVqsvd && attack_failed;
  }
  return out;
}

} // namespace

std::vector<AttackReportRow> run_experiment(const ExperimentConfig& config)
{
  if (config.users < 1)
    throw std::invalid_argument("run_experiment: need at least one user");
  if (config.forgeries_factor < 1)
    throw std::invalid_argument("run_experiment: forgeries factor must be >= 1");
  if (config.actors.empty())
    throw std::invalid_argument("run_experiment: no actors");
  for (int t : config.t_values)
    for (int a : config.a_values)
      if (t < 1 || a < 1 || t + a > kMaxStateQubits)
        throw std::invalid_argument("run_experiment: grid cell outside the simulator ceiling");

  std::vector<AttackReportRow> rows;
  for (int t : config.t_values)
    for (int a : config.a_values) {
      std::vector<UserOutcome> users(static_cast<std::size_t>(config.users));
#pragma omp parallel for schedule(dynamic)
      for (int u = 0; u < config.users; ++u)
        users[static_cast<std::size_t>(u)] = run_user(config, t, a, u);

      for (std::size_t ai = 0; ai < config.actors.size(); ++ai) {
        AttackReportRow row;
        row.t = t;
        row.a = a;
        row.actor = config.actors[ai];
        row.forgeries = config.forgeries_factor * static_cast<int>(dim_of(a));
        std::vector<double> vals;
        for (const auto& uo : users) {
          if (uo.failed[ai])
            ++row.failures;
          else
            vals.push_back(uo.mean_deviation[ai]);
        }
        row.users = static_cast<int>(vals.size());
        if (!vals.empty()) {
          const double mean = std::accumulate(vals.begin(), vals.end(), 0.0) / static_cast<double>(vals.size());
          double var = 0.0;
          for (double v : vals)
            var += (v - mean) * (v - mean);
          row.mean_deviation = mean;
          row.std_deviation = vals.size() > 1 ? std::sqrt(var / static_cast<double>(vals.size() - 1)) : 0.0;
        }
        rows.push_back(row);
      }
    }
  return rows;
}

} // namespace vqpt
