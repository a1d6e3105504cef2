#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "vqpt/ansatz.hpp"
#include "vqpt/estimator.hpp"
#include "vqpt/qcore.hpp"

namespace vqpt {

enum class Algorithm { PtVqc, UVqsvd };

std::string_view to_string(Algorithm a);
Algorithm algorithm_from_string(std::string_view s);
Variant variant_for(Algorithm a);

// ---------------------------------------------------------------- costs

/// (1 / 2^{n-1}) sum_i [1 - Re<i|U^dagger U_VQC|i>], each overlap taken from
/// the ancilla interference circuit. Range [0, 4].
double cost_ptvqc(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta, ShotPlan& plan);

/// (1 / 2^n) sum_i [1 - |<i|U_VQC^dagger U U_VQC|i>|]. Range [0, 1] in exact mode.
double cost_uvqsvd(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta, ShotPlan& plan);

// ------------------------------------------------------ parameter shift

inline constexpr double kShift4Near = (std::numbers::sqrt2 + 1.0) / (4.0 * std::numbers::sqrt2);
inline constexpr double kShift4Far = (std::numbers::sqrt2 - 1.0) / (4.0 * std::numbers::sqrt2);

/// Four-term rule, exact for trigonometric polynomials with frequencies
/// {1/2, 1} in theta_i.
template <typename Fn>
auto grad_shift4(const Fn& cost, const ParamVector& theta, std::size_t i)
{
  constexpr double h = std::numbers::pi / 2;
  // sequenced so stateful callables (shot streams) see a fixed call order
  const auto near_plus = cost(theta.shifted(i, h));
  const auto near_minus = cost(theta.shifted(i, -h));
  const auto far_plus = cost(theta.shifted(i, 3 * h));
  const auto far_minus = cost(theta.shifted(i, -3 * h));
  return kShift4Near * (near_plus - near_minus) - kShift4Far * (far_plus - far_minus);
}

/// Two-term rule, exact for frequency-1 trigonometric polynomials in theta_i.
/// Works for real or complex valued functions.
template <typename Fn>
auto grad_shift2(const Fn& cost, const ParamVector& theta, std::size_t i)
{
  constexpr double h = std::numbers::pi / 2;
  const auto plus = cost(theta.shifted(i, h));
  const auto minus = cost(theta.shifted(i, -h));
  return 0.5 * (plus - minus);
}

/// How the U-VQSVD gradient is assembled from two-term shifts.
enum class UvqsvdGradient {
  /// Two-term rule on each diagonal overlap z_i, combined through
  /// d|z| = Re(conj(z) dz) / |z|. Exact in exact mode.
  ChainRule,
  /// Two-term rule applied to the cost itself; biased because the cost
  /// contains a modulus.
  DirectShift,
};

/// Full gradient of the PT_VQC cost by the four-term rule. Components are
/// evaluated in parallel; in shot mode component i, shift s draws from
/// plan.rng.derive({i, s}), so results do not depend on thread scheduling.
std::vector<double> gradient_ptvqc(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                                   const ShotPlan& plan);

std::vector<double> gradient_uvqsvd(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                                    const ShotPlan& plan, UvqsvdGradient mode = UvqsvdGradient::ChainRule);

namespace serial {
/// Single-threaded reference for gradient_ptvqc / gradient_uvqsvd with the
/// same per-component random streams.
std::vector<double> gradient_ptvqc(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                                   const ShotPlan& plan);
std::vector<double> gradient_uvqsvd(const UnitaryMatrix& target, const AnsatzSpec& spec, const ParamVector& theta,
                                    const ShotPlan& plan, UvqsvdGradient mode = UvqsvdGradient::ChainRule);
} // namespace serial

// ----------------------------------------------------------------- Adam

struct AdamState {
  double beta1 = 0.8;
  double beta2 = 0.999;
  double learning_rate = 0.1;
  double epsilon = 1e-8;
  std::vector<double> m;
  std::vector<double> v;
  std::uint64_t step = 0;

  AdamState() = default;
  AdamState(std::size_t n_params, double lr) : learning_rate(lr), m(n_params, 0.0), v(n_params, 0.0) {}
};

/// One bias-corrected Adam update. Throws std::invalid_argument on length mismatch.
void adam_step(AdamState& state, ParamVector& theta, const std::vector<double>& gradient);

// ------------------------------------------------------------- training

struct TrainConfig {
  int max_iters = 100;
  double cost_threshold = 0.10;
  double learning_rate = 0.1;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  bool record_time = false;
  UvqsvdGradient uvqsvd_gradient = UvqsvdGradient::ChainRule;
  /// Starting point; drawn uniformly from [0, 2 pi) when empty.
  std::optional<ParamVector> initial;
};

struct TraceRecord {
  int iteration = 0;
  double cost = 0.0;
  double fidelity = 0.0;
  double similarity = 0.0;
  double elapsed_ms = 0.0;
};

enum class TrainStatus { Converged, MaxIterations, NonFinite };
std::string_view to_string(TrainStatus s);

struct TrainTrace {
  Algorithm algorithm = Algorithm::PtVqc;
  AnsatzSpec spec;
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  double cost_threshold = 0.0;
  std::vector<TraceRecord> records;
  ParamVector final_theta;
  TrainStatus status = TrainStatus::MaxIterations;
  std::string diagnostic;

  const TraceRecord& last() const { return records.back(); }
  bool converged() const { return status == TrainStatus::Converged; }
};

/// First iteration <= max_iters whose recorded cost is <= threshold.
std::optional<int> iterations_to_threshold(const TrainTrace& trace, double threshold, int max_iters);

/// Per-iteration diagnostics computed exactly from the dense matrices.
/// PT_VQC: fidelity = mean_i |<i|U^dagger U_VQC|i>|^2, similarity = S(U, U_VQC).
/// U_VQSVD: fidelity = mean_i |<i|U_VQC^dagger U U_VQC|i>|^2 and similarity =
/// S(U, U_VQC D U_VQC^dagger) with D the learned diagonal phases.
struct Diagnostics {
  double fidelity = 0.0;
  double similarity = 0.0;
};
Diagnostics diagnostics(Algorithm algorithm, const UnitaryMatrix& target, const AnsatzSpec& spec,
                        const ParamVector& theta);

double evaluate_cost(Algorithm algorithm, const UnitaryMatrix& target, const AnsatzSpec& spec,
                     const ParamVector& theta, ShotPlan& plan);

/// Uniform draw on [0, 2 pi) for every parameter.
ParamVector random_parameters(const AnsatzSpec& spec, Rng& rng);

/// Full-gradient Adam descent from a seeded start; record 0 is the initial
/// point, record k follows the k-th update. Stops once the cost is at or
/// below the threshold, after max_iters updates, or on a non-finite cost.
TrainTrace train(Algorithm algorithm, const UnitaryMatrix& target, const AnsatzSpec& spec, const TrainConfig& config);

// ----------------------------------------------------------- depth scan

enum class Aggregation { Mean, Max };

struct DepthScanConfig {
  Algorithm algorithm = Algorithm::PtVqc;
  int n_qubits = 1;
  std::vector<int> depths;
  double cost_threshold = 0.10;
  int max_iters = 200;
  double learning_rate = 0.1;
  std::uint64_t seed = 0;
  /// Defaults to Mean for PT_VQC and Max for U_VQSVD.
  std::optional<Aggregation> aggregation;
};

struct DepthScanEntry {
  int depth = 0;
  /// Iterations to threshold per target; nullopt marks a run that never got there.
  std::vector<std::optional<int>> iterations;
  /// Mean or max over targets, failures counted as max_iters.
  double aggregate_iterations = 0.0;
  /// depth * aggregate_iterations
  double resource = 0.0;
  int failures = 0;
};

struct DepthScanResult {
  Algorithm algorithm = Algorithm::PtVqc;
  int n_qubits = 0;
  Aggregation aggregation = Aggregation::Mean;
  std::vector<DepthScanEntry> entries;
  int optimal_depth = 0;
};

/// Trains every (depth, target) pair and picks the depth with the fewest
/// failed targets, then the smallest resource, then the shallower depth. Run seeds derive from
/// config.seed, the depth and the target index.
DepthScanResult depth_scan(const DepthScanConfig& config, const std::vector<UnitaryMatrix>& targets);

/// Haar targets drawn from Rng(seed).derive({n, j}).
std::vector<UnitaryMatrix> haar_targets(int n_qubits, int count, std::uint64_t seed);

// --------------------------------------------------------- exponential fit

struct ExpFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  /// Root-mean-square residual.
  double rms = 0.0;
  bool converged = false;
  int iterations = 0;
};

struct FitPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Least-squares fit of y = a e^{b x} + c by damped Gauss-Newton
/// (Levenberg-Marquardt) from log-differenced starting values. Needs >= 3
/// points; non-convergence after 1000 iterations sets converged = false and
/// returns the best parameters seen.
ExpFit fit_exponential(const std::vector<FitPoint>& points);

} // namespace vqpt
