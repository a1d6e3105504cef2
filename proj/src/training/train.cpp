#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "vqpt/gates.hpp"
#include "vqpt/metrics.hpp"
#include "vqpt/training.hpp"

namespace vqpt {

namespace {
// Stream keys under the run seed.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kCostStream = 2;
constexpr std::uint64_t kGradStream = 3;
} // namespace

std::string_view to_string(TrainStatus s)
{
  switch (s) {
  case TrainStatus::Converged:
    return "converged";
  case TrainStatus::MaxIterations:
    return "max_iterations";
  case TrainStatus::NonFinite:
    return "non_finite";
  }
  return "unknown";
}

void adam_step(AdamState& state, ParamVector& theta, const std::vector<double>& gradient)
{
  if (gradient.size() != theta.size() || state.m.size() != theta.size() || state.v.size() != theta.size())
    throw std::invalid_argument("adam_step: length mismatch");
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(state.beta1, t);
  const double c2 = 1.0 - std::pow(state.beta2, t);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double g = gradient[i];
    state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * g;
    state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * g * g;
    const double m_hat = state.m[i] / c1;
    const double v_hat = state.v[i] / c2;
    theta[i] -= state.learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
  }
}

std::optional<int> iterations_to_threshold(const TrainTrace& trace, double threshold, int max_iters)
{
  for (const auto& r : trace.records) {
    if (r.iteration > max_iters)
      break;
    if (r.cost <= threshold)
      return r.iteration;
  }
  return std::nullopt;
}

Diagnostics diagnostics(Algorithm algorithm, const UnitaryMatrix& target, const AnsatzSpec& spec,
                        const ParamVector& theta)
{
  const UnitaryMatrix vqc = build_unitary(spec, theta);
  if (algorithm == Algorithm::PtVqc)
    return {mean_basis_fidelity(target, vqc), similarity(target, vqc)};

  const CMatrix rotated = vqc.matrix().adjoint() * target.matrix() * vqc.matrix();
  const auto d = rotated.rows();
  CMatrix phases = CMatrix::Zero(d, d);
  double fid = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const Complex z = rotated(i, i);
    fid += std::norm(z);
    phases(i, i) = std::abs(z) > 0.0 ? z / std::abs(z) : Complex(1.0);
  }
  const UnitaryMatrix reconstructed(CMatrix(vqc.matrix() * phases * vqc.matrix().adjoint()));
  return {fid / static_cast<double>(d), similarity(target, reconstructed)};
}

ParamVector random_parameters(const AnsatzSpec& spec, Rng& rng)
{
  std::vector<double> v(spec.param_count());
  for (auto& x : v)
    x = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return ParamVector(std::move(v));
}

TrainTrace train(Algorithm algorithm, const UnitaryMatrix& target, const AnsatzSpec& spec, const TrainConfig& config)
{
  if (spec.variant != variant_for(algorithm))
    throw std::invalid_argument("train: ansatz variant does not match the algorithm");
  if (target.n_qubits() != spec.n_qubits)
    throw std::invalid_argument("train: target and ansatz dimensions differ");
  if (config.max_iters < 0)
    throw std::invalid_argument("train: max_iters must be >= 0");

  const Rng root(config.seed);
  TrainTrace trace;
  trace.algorithm = algorithm;
  trace.spec = spec;
  trace.seed = config.seed;
  trace.shots = config.shots;
  trace.cost_threshold = config.cost_threshold;

  ParamVector theta;
  if (config.initial) {
    theta = *config.initial;
    if (theta.size() != spec.param_count())
      throw std::invalid_argument("train: initial parameters have the wrong length");
  } else {
    Rng init = root.derive({kInitStream});
    theta = random_parameters(spec, init);
  }

  AdamState adam(theta.size(), config.learning_rate);
  const auto start = std::chrono::steady_clock::now();

  for (int it = 0;; ++it) {
    if (it > 0) {
      const ShotPlan gplan{config.shots, root.derive({kGradStream, static_cast<std::uint64_t>(it)})};
      const auto grad = algorithm == Algorithm::PtVqc
                            ? gradient_ptvqc(target, spec, theta, gplan)
                            : gradient_uvqsvd(target, spec, theta, gplan, config.uvqsvd_gradient);
      adam_step(adam, theta, grad);
    }
    ShotPlan cplan{config.shots, root.derive({kCostStream, static_cast<std::uint64_t>(it)})};
    const double cost = evaluate_cost(algorithm, target, spec, theta, cplan);

    TraceRecord rec;
    rec.iteration = it;
    rec.cost = cost;
    if (config.record_time)
      rec.elapsed_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (!std::isfinite(cost)) {
      trace.status = TrainStatus::NonFinite;
      trace.diagnostic = "non-finite cost at iteration " + std::to_string(it);
      break;
    }
    const auto diag = diagnostics(algorithm, target, spec, theta);
    rec.fidelity = diag.fidelity;
    rec.similarity = diag.similarity;
    trace.records.push_back(rec);

    if (cost <= config.cost_threshold) {
      trace.status = TrainStatus::Converged;
      break;
    }
    if (it >= config.max_iters) {
      trace.status = TrainStatus::MaxIterations;
      break;
    }
  }
  trace.final_theta = theta;
  return trace;
}

std::vector<UnitaryMatrix> haar_targets(int n_qubits, int count, std::uint64_t seed)
{
  std::vector<UnitaryMatrix> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  const Rng root(seed);
  for (int j = 0; j < count; ++j) {
    Rng r = root.derive({static_cast<std::uint64_t>(n_qubits), static_cast<std::uint64_t>(j)});
    out.push_back(haar_unitary(static_cast<Eigen::Index>(dim_of(n_qubits)), r));
  }
  return out;
}

DepthScanResult depth_scan(const DepthScanConfig& config, const std::vector<UnitaryMatrix>& targets)
{
  if (config.depths.empty())
    throw std::invalid_argument("depth_scan: empty depth range");
  if (targets.empty())
    throw std::invalid_argument("depth_scan: no targets");
  for (int d : config.depths)
    if (d < 1)
      throw std::invalid_argument("depth_scan: depths must be >= 1");

  DepthScanResult result;
  result.algorithm = config.algorithm;
  result.n_qubits = config.n_qubits;
  result.aggregation = config.aggregation.value_or(config.algorithm == Algorithm::PtVqc ? Aggregation::Mean
                                                                                          : Aggregation::Max);
  const auto nd = config.depths.size();
  const auto nt = targets.size();
  std::vector<std::optional<int>> iters(nd * nt);
  const Rng root(config.seed);

  const auto jobs = static_cast<std::int64_t>(nd * nt);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t job = 0; job < jobs; ++job) {
    const auto di = static_cast<std::size_t>(job) / nt;
    const auto ti = static_cast<std::size_t>(job) % nt;
    const int d = config.depths[di];
    TrainConfig tc;
    tc.max_iters = config.max_iters;
    tc.cost_threshold = config.cost_threshold;
    tc.learning_rate = config.learning_rate;
    tc.seed = root.derive({static_cast<std::uint64_t>(d), ti}).seed();
    const AnsatzSpec spec(config.n_qubits, d, variant_for(config.algorithm));
    const auto trace = train(config.algorithm, targets[ti], spec, tc);
    iters[static_cast<std::size_t>(job)] = iterations_to_threshold(trace, config.cost_threshold, config.max_iters);
  }

  double best = std::numeric_limits<double>::infinity();
  int best_failures = std::numeric_limits<int>::max();
  for (std::size_t di = 0; di < nd; ++di) {
    DepthScanEntry e;
    e.depth = config.depths[di];
    double sum = 0.0, mx = 0.0;
    for (std::size_t ti = 0; ti < nt; ++ti) {
      const auto v = iters[di * nt + ti];
      e.iterations.push_back(v);
      if (!v)
        ++e.failures;
      const double count = v ? static_cast<double>(*v) : static_cast<double>(config.max_iters);
      sum += count;
      mx = std::max(mx, count);
    }
    e.aggregate_iterations = result.aggregation == Aggregation::Mean ? sum / static_cast<double>(nt) : mx;
    e.resource = static_cast<double>(e.depth) * e.aggregate_iterations;
    // fewest failures first, then resource, then the shallower depth
    if (e.failures < best_failures ||
        (e.failures == best_failures &&
         (e.resource < best || (e.resource == best && e.depth < result.optimal_depth)))) {
      best_failures = e.failures;
      best = e.resource;
      result.optimal_depth = e.depth;
    }
    result.entries.push_back(std::move(e));
  }
  return result;
}

} // namespace vqpt
