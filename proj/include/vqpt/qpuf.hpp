#pragma once

// Phase-estimation quantum PUF and impersonation experiment.
//
// Register layout for one phase-estimation round: target qubits 0..t-1,
// ancilla qubits t..t+a-1. Ancilla j controls U^{2^j}; after the inverse QFT
// the ancilla register read as an integer is the outcome k in [0, 2^a).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vqpt/qcore.hpp"
#include "vqpt/rng.hpp"
#include "vqpt/training.hpp"

namespace vqpt {

struct QpufInstance {
  int t = 1;
  int a = 1;
  UnitaryMatrix u;
  std::uint64_t seed = 0;

  /// Haar-random U on t qubits drawn from Rng(seed).
  static QpufInstance sample(int t, int a, std::uint64_t seed);
  /// Checks t, a >= 1, t + a within the statevector ceiling and U unitary.
  void validate() const;
};

/// Precomputes the controlled powers and the inverse QFT for one instance.
class PhaseEstimator {
public:
  explicit PhaseEstimator(const QpufInstance& instance);

  /// Exact outcome distribution P(k) and the unnormalised post-measurement
  /// target blocks, one per k.
  struct Outcomes {
    std::vector<double> probabilities;
    std::vector<CVector> blocks;
  };
  Outcomes outcomes(const StateVector& input) const;

  int t() const { return t_; }
  int a() const { return a_; }

private:
  int t_;
  int a_;
  std::vector<UnitaryMatrix> powers_; // U^{2^j}
  UnitaryMatrix inverse_qft_;
};

struct QpeResult {
  std::uint64_t k = 0;
  StateVector post_state;
};

/// One full phase-estimation round: k sampled from the exact distribution,
/// post state renormalised. Throws std::invalid_argument for an
/// unnormalised input or a dimension mismatch.
QpeResult qpe_round(const PhaseEstimator& pe, const StateVector& input, Rng& rng);
QpeResult qpe_round(const QpufInstance& instance, const StateVector& input, Rng& rng);

struct ChallengeRecord {
  std::uint64_t k = 0;
  StateVector state;
  std::optional<std::uint64_t> k_verified;
  std::optional<double> deviation;
};

/// min(|k - k'|, 2^a - |k - k'|) / 2^a, in [0, 1/2].
double circular_deviation(std::uint64_t k, std::uint64_t k_prime, int a);

ChallengeRecord generation(const PhaseEstimator& pe, const StateVector& initial, Rng& rng);

struct Verification {
  std::uint64_t k_prime = 0;
  double deviation = 0.0;
};
Verification verification(const PhaseEstimator& pe, const StateVector& submitted, std::uint64_t k, Rng& rng);

struct LearnedEigenpair {
  /// In [0, 2 pi).
  double phase = 0.0;
  StateVector state;
};

/// Eigenpairs from a trained U_VQSVD ansatz: |phi_i> = U_VQC|i> and the
/// phase of <phi_i|U|phi_i> as measured by the overlap circuits.
std::vector<LearnedEigenpair> learned_eigenpairs(const UnitaryMatrix& u, const AnsatzSpec& spec,
                                                 const ParamVector& theta, ShotPlan& plan);

/// Circular distance between phi / 2 pi and k / 2^a, in [0, 1/2].
double phase_distance(double phase, std::uint64_t k, int a);

/// The learned state whose phase is circularly closest to k / 2^a; ties go
/// to the lowest index. Throws std::invalid_argument on an empty set.
const StateVector& attack_uvqsvd(const std::vector<LearnedEigenpair>& learned, std::uint64_t k, int a);

enum class Actor { Trusted, Random, UVqsvd };
std::string_view to_string(Actor a);
Actor actor_from_string(std::string_view s);

enum class RandomForgerState { Zero, Haar };

struct ExperimentConfig {
  std::vector<int> t_values{1, 2};
  std::vector<int> a_values{2, 3, 4};
  int users = 10;
  int forgeries_factor = 25; // forgeries per user = factor * 2^a
  std::vector<Actor> actors{Actor::Trusted, Actor::UVqsvd, Actor::Random};
  std::uint64_t seed = 0;
  RandomForgerState random_state = RandomForgerState::Zero;
  /// Haar-random generation input instead of |0...0>.
  bool haar_generation_input = false;

  // Attacker training.
  /// Ansatz depth per t (index t-1); the last entry covers larger t.
  std::vector<int> attack_depths{1, 3};
  int attack_iters = 200;
  double attack_threshold = 0.10;
  double attack_learning_rate = 0.1;
  std::uint64_t attack_shots = 0;
};

struct AttackReportRow {
  int t = 0;
  int a = 0;
  Actor actor = Actor::Trusted;
  double mean_deviation = 0.0;
  /// Across-user standard deviation of the per-user mean deviation.
  double std_deviation = 0.0;
  int users = 0;
  int forgeries = 0;
  int failures = 0;
};

/// Runs every (t, a) cell; rows ordered by t, a, then actor as configured.
std::vector<AttackReportRow> run_experiment(const ExperimentConfig& config);

int attack_depth_for(const ExperimentConfig& config, int t);

} // namespace vqpt
