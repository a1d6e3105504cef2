#include "vqpt/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <stdexcept>

#include <omp.h>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "vqpt/gates.hpp"
#include "vqpt/metrics.hpp"
#include "vqpt/qpuf.hpp"
#include "vqpt/serialize.hpp"
#include "vqpt/training.hpp"

#ifndef VQPT_VERSION
#define VQPT_VERSION "0.0.0"
#endif

namespace vqpt::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// Stream keys under the master seed.
constexpr std::uint64_t kTargetStream = 11;
constexpr std::uint64_t kTrainStream = 12;

const std::vector<std::string> kTraceColumns{"iteration", "cost", "fidelity", "similarity", "elapsed_ms"};
const std::vector<std::string> kSummaryColumns{"target",         "status",        "iterations_to_threshold",
                                               "final_cost",     "final_fidelity", "final_similarity"};
const std::vector<std::string> kEigenColumns{"index", "phase", "magnitude", "oracle_fidelity"};
const std::vector<std::string> kScanColumns{"depth", "aggregate_iterations", "resource", "failures", "optimal"};
const std::vector<std::string> kScanRunColumns{"depth", "target", "iterations", "reached"};
const std::vector<std::string> kAttackColumns{"t",     "a",         "actor",   "mean_deviation",
                                              "std_deviation", "users", "forgeries", "failures"};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v)
{
  return fmt::format("{:.17g}", v);
}

class CsvWriter {
public:
  CsvWriter(const fs::path& path, const std::vector<std::string>& columns) : path_(path)
  {
    out_ += fmt::format("{}\n", fmt::join(columns, ","));
  }
  template <typename... Ts>
  void row(const Ts&... cells)
  {
    std::vector<std::string> v{cell(cells)...};
    out_ += fmt::format("{}\n", fmt::join(v, ","));
  }
  void write() const
  {
    std::ofstream f(path_, std::ios::binary);
    if (!f)
      throw std::runtime_error("cannot write " + path_.string());
    f << out_;
  }

private:
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(std::string_view s) { return std::string(s); }
  static std::string cell(const char* s) { return s; }
  static std::string cell(double v) { return num(v); }
  template <typename T>
    requires std::is_integral_v<T>
  static std::string cell(T v)
  {
    return std::to_string(v);
  }

  fs::path path_;
  std::string out_;
};

std::string iso_now()
{
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Everything a command records about itself.
struct Run {
  std::string command;
  json config;
  std::uint64_t seed = 0;
  fs::path out;
  std::string started;
  std::vector<std::string> outputs;
  json schemas = json::object();
  json summary = json::object();

  fs::path file(const std::string& name, const std::vector<std::string>& columns)
  {
    outputs.push_back(name);
    if (!columns.empty())
      schemas[name] = columns;
    return out / name;
  }

  void write_manifest() const
  {
    json m;
    m["command"] = command;
    m["config"] = config;
    m["seed"] = seed;
    m["version"] = VQPT_VERSION;
    m["csv_schema_version"] = kCsvSchemaVersion;
    m["csv_schemas"] = schemas;
    m["started_at"] = started;
    m["finished_at"] = iso_now();
    m["outputs"] = outputs;
    m["summary"] = summary;
    std::ofstream f(out / "manifest.json", std::ios::binary);
    f << m.dump(2) << "\n";
  }
};

// ------------------------------------------------------------ options

struct CommonOptions {
  std::uint64_t seed = 1;
  std::string out;
  bool record_time = false;

  void add(CLI::App* app, const std::string& default_out)
  {
    out = default_out;
    app->add_option("--seed", seed, "Master seed")->capture_default_str();
    app->add_option("--out", out, "Output directory")->capture_default_str();
    app->add_flag("--record-time", record_time, "Record wall time in elapsed_ms (breaks byte-identical reruns)");
  }
  void to(json& j) const
  {
    j["seed"] = seed;
    j["out"] = out;
    j["record-time"] = record_time;
  }
};

struct TrainOptions {
  int qubits = 2;
  int depth = 3;
  int iters = 100;
  std::uint64_t shots = 0;
  int targets = 5;
  double threshold = 0.10;
  double lr = 0.1;
  std::string target_kind = "haar";
  bool oracle_check = false;
  std::string gradient = "chain";

  void add(CLI::App* app, bool uvqsvd)
  {
    app->add_option("--qubits", qubits, "Number of qubits n")->capture_default_str()->check(
        CLI::Range(1, kMaxUnitaryQubits - 1));
    app->add_option("--depth", depth, "Ansatz depth d")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--iters", iters, "Maximum Adam updates per target")->capture_default_str()->check(
        CLI::NonNegativeNumber);
    app->add_option("--shots", shots, "Shots per circuit (0 = exact)")->capture_default_str();
    app->add_option("--targets", targets, "Number of targets")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--threshold", threshold, "Cost threshold for convergence")->capture_default_str();
    app->add_option("--lr", lr, "Adam learning rate")->capture_default_str()->check(CLI::NonNegativeNumber);
    app->add_option("--target-kind", target_kind, "haar | realizable | diagonal")
        ->capture_default_str()
        ->check(CLI::IsMember({"haar", "realizable", "diagonal"}));
    if (uvqsvd) {
      app->add_flag("--oracle-check", oracle_check, "Compare learned eigenvectors with an exact eigensolver");
      app->add_option("--gradient", gradient, "chain | direct")
          ->capture_default_str()
          ->check(CLI::IsMember({"chain", "direct"}));
    }
  }
  void to(json& j, bool uvqsvd) const
  {
    j["qubits"] = qubits;
    j["depth"] = depth;
    j["iters"] = iters;
    j["shots"] = shots;
    j["targets"] = targets;
    j["threshold"] = threshold;
    j["lr"] = lr;
    j["target-kind"] = target_kind;
    if (uvqsvd) {
      j["oracle-check"] = oracle_check;
      j["gradient"] = gradient;
    }
  }
};

struct ScanOptions {
  std::vector<int> qubits{1, 2};
  std::vector<int> depths{1, 2, 3, 4};
  std::string algorithm = "uvqsvd";
  int targets = 10;
  double threshold = 0.10;
  int iters = 200;
  double lr = 0.1;
  bool selftest = false;

  void add(CLI::App* app)
  {
    app->add_option("--qubits", qubits, "Qubit counts, comma separated")->delimiter(',')->capture_default_str();
    app->add_option("--depths", depths, "Depths, comma separated")->delimiter(',')->capture_default_str();
    app->add_option("--algorithm", algorithm, "ptvqc | uvqsvd")
        ->capture_default_str()
        ->check(CLI::IsMember({"ptvqc", "uvqsvd"}));
    app->add_option("--targets", targets, "Haar targets per qubit count")->capture_default_str()->check(
        CLI::PositiveNumber);
    app->add_option("--threshold", threshold, "Cost threshold")->capture_default_str();
    app->add_option("--iters", iters, "Iteration cap per run")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--lr", lr, "Adam learning rate")->capture_default_str();
    app->add_flag("--selftest", selftest, "Also fit synthetic points with known parameters");
  }
  void to(json& j) const
  {
    j["qubits"] = qubits;
    j["depths"] = depths;
    j["algorithm"] = algorithm;
    j["targets"] = targets;
    j["threshold"] = threshold;
    j["iters"] = iters;
    j["lr"] = lr;
    j["selftest"] = selftest;
  }
};

struct AttackOptions {
  std::vector<int> t{1, 2};
  std::vector<int> a{2, 3, 4};
  int users = 10;
  std::vector<std::string> actors{"trusted", "uvqsvd", "random"};
  int forgeries_factor = 25;
  std::string random_state = "zero";
  std::string generation_input = "zero";
  std::vector<int> attack_depths{1, 3};
  int attack_iters = 200;
  double attack_threshold = 0.10;
  double attack_lr = 0.1;
  std::uint64_t attack_shots = 0;

  void add(CLI::App* app)
  {
    app->add_option("--t", t, "Target qubit counts")->delimiter(',')->capture_default_str();
    app->add_option("--a", a, "Ancilla qubit counts")->delimiter(',')->capture_default_str();
    app->add_option("--users", users, "Users per cell")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--actors", actors, "trusted, uvqsvd, random")
        ->delimiter(',')
        ->capture_default_str()
        ->check(CLI::IsMember({"trusted", "uvqsvd", "random"}));
    app->add_option("--forgeries-factor", forgeries_factor, "Forgeries per user = factor * 2^a")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--random-state", random_state, "State sent by the random forger: zero | haar")
        ->capture_default_str()
        ->check(CLI::IsMember({"zero", "haar"}));
    app->add_option("--generation-input", generation_input, "Generation input state: zero | haar")
        ->capture_default_str()
        ->check(CLI::IsMember({"zero", "haar"}));
    app->add_option("--attack-depths", attack_depths, "Attacker ansatz depth for t = 1, 2, ...")
        ->delimiter(',')
        ->capture_default_str();
    app->add_option("--attack-iters", attack_iters, "Attacker iteration cap")->capture_default_str();
    app->add_option("--attack-threshold", attack_threshold, "Attacker cost threshold")->capture_default_str();
    app->add_option("--attack-lr", attack_lr, "Attacker learning rate")->capture_default_str();
    app->add_option("--attack-shots", attack_shots, "Attacker shots per circuit (0 = exact)")->capture_default_str();
  }
  void to(json& j) const
  {
    j["t"] = t;
    j["a"] = a;
    j["users"] = users;
    j["actors"] = actors;
    j["forgeries-factor"] = forgeries_factor;
    j["random-state"] = random_state;
    j["generation-input"] = generation_input;
    j["attack-depths"] = attack_depths;
    j["attack-iters"] = attack_iters;
    j["attack-threshold"] = attack_threshold;
    j["attack-lr"] = attack_lr;
    j["attack-shots"] = attack_shots;
  }
};

// Converts a recorded config back into command-line arguments.
std::vector<std::string> config_to_args(const json& config, const std::optional<std::string>& out_override)
{
  std::vector<std::string> args;
  for (const auto& [key, value] : config.items()) {
    if (key == "out" && out_override) {
      args.push_back("--out=" + *out_override);
      continue;
    }
    if (value.is_boolean()) {
      if (value.get<bool>())
        args.push_back("--" + key);
    } else if (value.is_array()) {
      std::vector<std::string> parts;
      for (const auto& v : value)
        parts.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      args.push_back(fmt::format("--{}={}", key, fmt::join(parts, ",")));
    } else if (value.is_string()) {
      args.push_back(fmt::format("--{}={}", key, value.get<std::string>()));
    } else {
      args.push_back(fmt::format("--{}={}", key, value.dump()));
    }
  }
  return args;
}

Run start_run(const std::string& command, const CommonOptions& common)
{
  Run run;
  run.command = command;
  run.seed = common.seed;
  run.out = common.out;
  run.started = iso_now();
  fs::create_directories(run.out);
  common.to(run.config);
  return run;
}

// ----------------------------------------------------------- commands

UnitaryMatrix make_target(const std::string& kind, const AnsatzSpec& spec, Rng& rng)
{
  const auto d = static_cast<Eigen::Index>(dim_of(spec.n_qubits));
  if (kind == "realizable")
    return build_unitary(spec, random_parameters(spec, rng));
  if (kind == "diagonal") {
    CMatrix m = CMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      m(i, i) = std::exp(Complex(0.0, rng.uniform(0.0, 2.0 * std::numbers::pi)));
    return UnitaryMatrix(m);
  }
  return haar_unitary(d, rng);
}

void write_trace(const fs::path& path, const TrainTrace& trace)
{
  CsvWriter w(path, kTraceColumns);
  for (const auto& r : trace.records)
    w.row(r.iteration, r.cost, r.fidelity, r.similarity, r.elapsed_ms);
  w.write();
}

int cmd_train(Algorithm algorithm, const CommonOptions& common, const TrainOptions& opt)
{
  const bool sv = algorithm == Algorithm::UVqsvd;
  Run run = start_run(std::string(sv ? "uvqsvd" : "ptvqc"), common);
  opt.to(run.config, sv);

  const AnsatzSpec spec(opt.qubits, opt.depth, variant_for(algorithm));
  const Rng root(common.seed);
  CsvWriter summary(run.file("summary.csv", kSummaryColumns), kSummaryColumns);
  int reached = 0;
  bool numeric_failure = false;
  json finals = json::array();

  for (int j = 0; j < opt.targets; ++j) {
    Rng trng = root.derive({kTargetStream, static_cast<std::uint64_t>(j)});
    const auto target = make_target(opt.target_kind, spec, trng);

    TrainConfig tc;
    tc.max_iters = opt.iters;
    tc.cost_threshold = opt.threshold;
    tc.learning_rate = opt.lr;
    tc.shots = opt.shots;
    tc.seed = root.derive({kTrainStream, static_cast<std::uint64_t>(j)}).seed();
    tc.record_time = common.record_time;
    tc.uvqsvd_gradient = opt.gradient == "direct" ? UvqsvdGradient::DirectShift : UvqsvdGradient::ChainRule;
    const auto trace = train(algorithm, target, spec, tc);

    write_trace(run.file(fmt::format("trace_target{}.csv", j), kTraceColumns), trace);
    {
      std::ofstream f(run.file(fmt::format("theta_target{}.json", j), {}), std::ios::binary);
      f << json{{"spec", to_json(spec)}, {"theta", to_json(trace.final_theta)}, {"target", to_json(target)}}.dump(2)
        << "\n";
    }

    const auto hit = iterations_to_threshold(trace, opt.threshold, opt.iters);
    if (trace.status == TrainStatus::Converged)
      ++reached;
    if (trace.status == TrainStatus::NonFinite) {
      numeric_failure = true;
      std::cerr << "target " << j << ": " << trace.diagnostic << "\n";
    }
    const TraceRecord last = trace.records.empty() ? TraceRecord{} : trace.last();
    summary.row(j, to_string(trace.status), hit ? *hit : -1, last.cost, last.fidelity, last.similarity);
    finals.push_back({{"target", j}, {"status", to_string(trace.status)}, {"final_fidelity", last.fidelity}});
    fmt::print("target {}: {} after {} iterations, cost {:.6g}, fidelity {:.6g}, similarity {:.6g}\n", j,
               to_string(trace.status), last.iteration, last.cost, last.fidelity, last.similarity);

    if (sv) {
      CsvWriter eig(run.file(fmt::format("eigen_target{}.csv", j), kEigenColumns), kEigenColumns);
      auto plan = ShotPlan{opt.shots, root.derive({kTrainStream, static_cast<std::uint64_t>(j), 1})};
      const auto learned = learned_eigenpairs(target, spec, trace.final_theta, plan);
      std::optional<Eigen::ComplexEigenSolver<CMatrix>> es;
      if (opt.oracle_check)
        es.emplace(target.matrix());
      for (std::size_t i = 0; i < learned.size(); ++i) {
        ShotPlan mplan{0, Rng(0)};
        const auto e = uvqsvd_eigenphase(target, spec, trace.final_theta, i, mplan);
        double ofid = -1.0;
        if (es) {
          ofid = 0.0;
          for (Eigen::Index k = 0; k < es->eigenvectors().cols(); ++k)
            ofid = std::max(ofid, std::norm(es->eigenvectors().col(k).normalized().dot(learned[i].state.amps())));
        }
        eig.row(i, learned[i].phase, e.magnitude, ofid);
      }
      eig.write();
    }
  }
  summary.write();

  run.summary["targets"] = opt.targets;
  run.summary["reached_threshold"] = reached;
  run.summary["per_target"] = finals;
  run.write_manifest();
  if (numeric_failure)
    return kExitNumeric;
  return reached == opt.targets ? kExitOk : kExitNumeric;
}

int cmd_depth_scan(const CommonOptions& common, const ScanOptions& opt)
{
  if (opt.depths.empty() || opt.qubits.empty())
    throw UsageError("depth-scan needs at least one qubit count and one depth");
  for (int d : opt.depths)
    if (d < 1)
      throw UsageError("depths must be >= 1");
  for (int n : opt.qubits)
    if (n < 1 || n >= kMaxUnitaryQubits)
      throw UsageError("qubit counts must lie in [1, " + std::to_string(kMaxUnitaryQubits - 1) + "]");

  Run run = start_run("depth-scan", common);
  opt.to(run.config);
  const Algorithm alg = algorithm_from_string(opt.algorithm);
  const Rng root(common.seed);

  std::vector<FitPoint> points;
  json per_n = json::array();
  for (int n : opt.qubits) {
    DepthScanConfig cfg;
    cfg.algorithm = alg;
    cfg.n_qubits = n;
    cfg.depths = opt.depths;
    cfg.cost_threshold = opt.threshold;
    cfg.max_iters = opt.iters;
    cfg.learning_rate = opt.lr;
    cfg.seed = root.derive({kTrainStream, static_cast<std::uint64_t>(n)}).seed();
    const auto targets =
        haar_targets(n, opt.targets, root.derive({kTargetStream, static_cast<std::uint64_t>(n)}).seed());
    const auto r = depth_scan(cfg, targets);

    CsvWriter w(run.file(fmt::format("depth_scan_n{}.csv", n), kScanColumns), kScanColumns);
    CsvWriter runs(run.file(fmt::format("depth_scan_n{}_runs.csv", n), kScanRunColumns), kScanRunColumns);
    for (const auto& e : r.entries) {
      w.row(e.depth, e.aggregate_iterations, e.resource, e.failures, e.depth == r.optimal_depth ? 1 : 0);
      for (std::size_t t = 0; t < e.iterations.size(); ++t)
        runs.row(e.depth, t, e.iterations[t] ? *e.iterations[t] : opt.iters, e.iterations[t] ? 1 : 0);
    }
    w.write();
    runs.write();
    points.push_back({static_cast<double>(n), static_cast<double>(r.optimal_depth)});
    per_n.push_back({{"n", n}, {"optimal_depth", r.optimal_depth}});
    fmt::print("n={}: D_opt = {}\n", n, r.optimal_depth);
  }

  json fit;
  fit["model"] = "D_opt(n) = a exp(b n) + c";
  fit["points"] = per_n;
  if (points.size() >= 3) {
    const auto f = fit_exponential(points);
    fit["fit"] = {{"a", f.a}, {"b", f.b}, {"c", f.c}, {"rms", f.rms}, {"converged", f.converged},
                  {"iterations", f.iterations}};
  } else {
    fit["fit"] = nullptr;
    fit["reason"] = "fewer than 3 qubit counts";
  }

  bool selftest_ok = true;
  if (opt.selftest) {
    const double a = 0.5, b = 0.9, c = 1.0;
    std::vector<FitPoint> synth;
    for (int n = 1; n <= 6; ++n)
      synth.push_back({double(n), a * std::exp(b * n) + c});
    const auto f = fit_exponential(synth);
    selftest_ok = std::abs(f.a - a) < 1e-6 && std::abs(f.b - b) < 1e-6 && std::abs(f.c - c) < 1e-6;
    fit["selftest"] = {{"true", {{"a", a}, {"b", b}, {"c", c}}},
                       {"fit", {{"a", f.a}, {"b", f.b}, {"c", f.c}, {"rms", f.rms}}},
                       {"passed", selftest_ok}};
    fmt::print("selftest: {}\n", selftest_ok ? "recovered (a, b, c) within 1e-6" : "FAILED");
  }
  {
    std::ofstream f(run.file("fit.json", {}), std::ios::binary);
    f << fit.dump(2) << "\n";
  }
  run.summary["optimal_depths"] = per_n;
  run.summary["selftest_passed"] = selftest_ok;
  run.write_manifest();
  return selftest_ok ? kExitOk : kExitNumeric;
}

int cmd_qpuf_attack(const CommonOptions& common, const AttackOptions& opt)
{
  ExperimentConfig cfg;
  cfg.t_values = opt.t;
  cfg.a_values = opt.a;
  cfg.users = opt.users;
  cfg.forgeries_factor = opt.forgeries_factor;
  cfg.seed = common.seed;
  cfg.actors.clear();
  for (const auto& s : opt.actors)
    cfg.actors.push_back(actor_from_string(s));
  cfg.random_state = opt.random_state == "haar" ? RandomForgerState::Haar : RandomForgerState::Zero;
  cfg.haar_generation_input = opt.generation_input == "haar";
  cfg.attack_depths = opt.attack_depths;
  cfg.attack_iters = opt.attack_iters;
  cfg.attack_threshold = opt.attack_threshold;
  cfg.attack_learning_rate = opt.attack_lr;
  cfg.attack_shots = opt.attack_shots;
  if (cfg.t_values.empty() || cfg.a_values.empty() || cfg.actors.empty() || cfg.attack_depths.empty())
    throw UsageError("qpuf-attack needs non-empty --t, --a, --actors and --attack-depths");
  for (int t : cfg.t_values)
    for (int a : cfg.a_values)
      if (t < 1 || a < 1 || t + a > kMaxStateQubits)
        throw UsageError(fmt::format("grid cell t={} a={} is outside the simulator ceiling", t, a));

  Run run = start_run("qpuf-attack", common);
  opt.to(run.config);
  const auto rows = run_experiment(cfg);

  CsvWriter w(run.file("attack_report.csv", kAttackColumns), kAttackColumns);
  int failures = 0;
  for (const auto& r : rows) {
    w.row(r.t, r.a, to_string(r.actor), r.mean_deviation, r.std_deviation, r.users, r.forgeries, r.failures);
    failures += r.failures;
    fmt::print("t={} a={} {:<8} mean deviation {:.4f} (sd {:.4f}, {} users)\n", r.t, r.a, to_string(r.actor),
               r.mean_deviation, r.std_deviation, r.users);
  }
  w.write();
  run.summary["rows"] = rows.size();
  run.summary["training_failures"] = failures;
  run.write_manifest();
  return kExitOk;
}

void apply_thread_env()
{
  if (const char* s = std::getenv("VQPT_THREADS")) {
    const int n = std::atoi(s);
    if (n > 0)
      omp_set_num_threads(n);
  }
}

} // namespace

int run(const std::vector<std::string>& args)
{
  apply_thread_env();

  CLI::App app{"Variational quantum process tomography toolkit", "vqpt"};
  app.set_version_flag("--version", VQPT_VERSION);
  app.require_subcommand(1);

  CommonOptions c_pt, c_sv, c_scan, c_attack;
  TrainOptions o_pt, o_sv;
  ScanOptions o_scan;
  AttackOptions o_attack;
  std::string manifest_path, rerun_out;

  auto* pt = app.add_subcommand("ptvqc", "Learn Haar targets with PT_VQC");
  c_pt.add(pt, "out/ptvqc");
  o_pt.add(pt, false);
  auto* sv = app.add_subcommand("uvqsvd", "Learn eigenvectors up to phase with U-VQSVD");
  c_sv.add(sv, "out/uvqsvd");
  o_sv.add(sv, true);
  auto* scan = app.add_subcommand("depth-scan", "Optimal-depth scan and exponential fit");
  c_scan.add(scan, "out/depth_scan");
  o_scan.add(scan);
  auto* attack = app.add_subcommand("qpuf-attack", "PE-QPUF impersonation experiment");
  c_attack.add(attack, "out/qpuf_attack");
  o_attack.add(attack);
  auto* rerun = app.add_subcommand("rerun", "Re-run a command from its manifest.json");
  rerun->add_option("--manifest", manifest_path, "Path to manifest.json")->required()->check(CLI::ExistingFile);
  rerun->add_option("--out", rerun_out, "Output directory (default: the recorded one)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (pt->parsed())
      return cmd_train(Algorithm::PtVqc, c_pt, o_pt);
    if (sv->parsed())
      return cmd_train(Algorithm::UVqsvd, c_sv, o_sv);
    if (scan->parsed())
      return cmd_depth_scan(c_scan, o_scan);
    if (attack->parsed())
      return cmd_qpuf_attack(c_attack, o_attack);
    if (rerun->parsed()) {
      std::ifstream f(manifest_path);
      const json m = json::parse(f);
      std::vector<std::string> replay{m.at("command").get<std::string>()};
      const auto rest = config_to_args(m.at("config"),
                                       rerun_out.empty() ? std::nullopt : std::optional<std::string>(rerun_out));
      replay.insert(replay.end(), rest.begin(), rest.end());
      return run(replay);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: bad manifest: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}

} // namespace vqpt::cli
