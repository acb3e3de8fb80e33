#include "acorr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "acorr/rng.hpp"

namespace acorr {

namespace {

constexpr std::uint64_t kInputStream = 0;
constexpr std::uint64_t kNoiseStream = 1;

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

struct RunOutcome {
  bool diverged = false;
  std::vector<double> wep;    // at decimated iterations
  std::vector<double> ea_sq;  // at decimated iterations
  double window_ea_sq = 0.0;
  double window_wep = 0.0;
};

// One Monte Carlo replica: every algorithm filters the same data stream.
std::vector<RunOutcome> simulate_run(const ExperimentConfig& config, std::size_t run,
                                     std::size_t points) {
  const Eigen::Index m = config.dim();
  const std::size_t n = config.num_iterations;
  const std::size_t window_start = n - config.steady_state_window;
  const std::size_t algos = config.algorithms.size();

  Rng input_rng = Rng::derive(config.base_seed, {run, kInputStream});
  Rng noise_rng = Rng::derive(config.base_seed, {run, kNoiseStream});
  const double input_sd = std::sqrt(config.input_variance);

  std::vector<FilterState> states(algos, FilterState::zeros(m));
  std::vector<RunOutcome> out(algos);
  std::vector<CompensatedSum> window_ea(algos), window_wep(algos);
  for (auto& o : out) {
    o.wep.reserve(points);
    o.ea_sq.reserve(points);
  }

  Eigen::VectorXd x(m);
  Eigen::VectorXd diff(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) x[j] = input_sd * input_rng.normal();
    const double v = sample(config.noise, noise_rng);
    const double d = config.true_weights.dot(x) + v;
    const bool record = i % config.decimation == 0;
    const bool in_window = i >= window_start;
    for (std::size_t a = 0; a < algos; ++a) {
      if (out[a].diverged) continue;
      diff = config.true_weights - states[a].weights;
      const double e_a = diff.dot(x);
      const double wep = diff.squaredNorm();
      if (record) {
        out[a].wep.push_back(wep);
        out[a].ea_sq.push_back(e_a * e_a);
      }
      if (in_window) {
        window_ea[a].add(e_a * e_a);
        window_wep[a].add(wep);
      }
      try {
        step(states[a], x, d, config.algorithms[a].config);
      } catch (const DivergenceError&) {
        out[a].diverged = true;
      }
    }
  }
  const auto w = static_cast<double>(config.steady_state_window);
  for (std::size_t a = 0; a < algos; ++a) {
    out[a].window_ea_sq = window_ea[a].value() / w;
    out[a].window_wep = window_wep[a].value() / w;
  }
  return out;
}

unsigned worker_count(const ExperimentConfig& config) {
  unsigned t = config.threads;
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, config.num_runs));
}

void write_real(std::ostream& os, double v) {
  if (std::isfinite(v)) os << std::setprecision(17) << v;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (true_weights.size() == 0) throw UsageError("true weight vector must not be empty");
  if (!true_weights.allFinite()) throw UsageError("true weights must be finite");
  if (!(input_variance > 0.0) || !std::isfinite(input_variance)) {
    throw UsageError("input variance must be positive");
  }
  if (trace_rx && !(*trace_rx > 0.0)) throw UsageError("Tr(Rx) must be positive");
  noise.validate();
  for (const auto& a : algorithms) {
    try {
      a.config.validate();
    } catch (const UsageError& err) {
      throw UsageError("algorithm '" + a.label + "': " + err.what());
    }
  }
  if (num_runs == 0) throw UsageError("number of runs must be positive");
  if (num_iterations == 0) throw UsageError("number of iterations must be positive");
  if (steady_state_window == 0 || steady_state_window > num_iterations) {
    throw UsageError("steady-state window must be in [1, num_iterations]");
  }
  if (decimation == 0) throw UsageError("decimation must be positive");
  if (!(theory_abs_tol > 0.0)) throw UsageError("quadrature tolerance must be positive");
}

double ExperimentConfig::input_trace() const {
  return trace_rx ? *trace_rx : static_cast<double>(dim()) * input_variance;
}

Eigen::VectorXd reference_system() {
  Eigen::VectorXd w(9);
  w << 0.1, 0.2, 0.3, 0.4, 0.5, 0.4, 0.3, 0.2, 0.1;
  return w;
}

NoiseModel contaminated_gaussian_noise() {
  return NoiseModel{0.1, Gaussian{0.0, 1.0}, Gaussian{0.0, 10000.0}};
}

ExperimentConfig emse_study_config() {
  ExperimentConfig cfg;
  cfg.true_weights = reference_system();
  cfg.noise = contaminated_gaussian_noise();
  cfg.algorithms = {{"MACC", AlgorithmConfig::macc(0.01, KernelBandwidths(2.0, 1.0))}};
  cfg.mu_grid = {0.01, 0.05, 0.1, 0.15, 0.2, 0.25};
  return cfg;
}

std::vector<NamedAlgorithm> comparison_algorithms(int which_case) {
  switch (which_case) {
    case 1:
      return {{"SA", AlgorithmConfig::sa(0.005)},
              {"LMM", AlgorithmConfig::lmm(0.001, {0.5, 6.0, 6.2})},
              {"LLAD", AlgorithmConfig::llad(0.007, 1.8)},
              {"MCC", AlgorithmConfig::mcc(0.028, 1.15)},
              {"MACC", AlgorithmConfig::macc(0.0175, KernelBandwidths(0.7, 2.2))}};
    case 2:
      return {{"SA", AlgorithmConfig::sa(0.0032)},
              {"LMM", AlgorithmConfig::lmm(0.0085, {0.4, 8.0, 10.2})},
              {"LLAD", AlgorithmConfig::llad(0.004, 4.6)},
              {"MCC", AlgorithmConfig::mcc(0.009, 2.4)},
              {"MACC", AlgorithmConfig::macc(0.0205, KernelBandwidths(0.32, 3.0))}};
    default:
      throw UsageError("comparison case must be 1 or 2");
  }
}

ExperimentConfig comparison_config(int which_case) {
  ExperimentConfig cfg;
  cfg.true_weights = reference_system();
  cfg.noise = contaminated_gaussian_noise();
  cfg.noise.main = which_case == 1 ? ComponentDist{SplitGaussian{0.5, 5.0}}
                                   : ComponentDist{ShiftedF{5, 14}};
  cfg.algorithms = comparison_algorithms(which_case);
  cfg.num_runs = 500;
  return cfg;
}

IdentificationResult run_identification(const ExperimentConfig& config) {
  config.validate();
  const std::size_t algos = config.algorithms.size();
  const std::size_t points = (config.num_iterations + config.decimation - 1) / config.decimation;

  std::vector<std::vector<CompensatedSum>> wep_sum(algos, std::vector<CompensatedSum>(points));
  std::vector<std::vector<CompensatedSum>> ea_sum(algos, std::vector<CompensatedSum>(points));
  std::vector<CompensatedSum> ss_emse(algos), ss_wep(algos);
  std::vector<std::size_t> completed(algos, 0), diverged(algos, 0);

  // Runs are simulated in blocks and reduced in run order, so the result is
  // identical for every thread count.
  const unsigned workers = worker_count(config);
  const std::size_t block = static_cast<std::size_t>(workers) * 4;
  for (std::size_t first = 0; first < config.num_runs; first += block) {
    const std::size_t count = std::min(block, config.num_runs - first);
    std::vector<std::vector<RunOutcome>> outcomes(count);
    if (workers <= 1) {
      for (std::size_t k = 0; k < count; ++k) outcomes[k] = simulate_run(config, first + k, points);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
          for (std::size_t k; (k = next.fetch_add(1)) < count;) {
            outcomes[k] = simulate_run(config, first + k, points);
          }
        });
      }
    }
    for (const auto& run : outcomes) {
      for (std::size_t a = 0; a < algos; ++a) {
        const RunOutcome& o = run[a];
        if (o.diverged) {
          ++diverged[a];
          continue;
        }
        ++completed[a];
        for (std::size_t p = 0; p < points; ++p) {
          wep_sum[a][p].add(o.wep[p]);
          ea_sum[a][p].add(o.ea_sq[p]);
        }
        ss_emse[a].add(o.window_ea_sq);
        ss_wep[a].add(o.window_wep);
      }
    }
  }

  IdentificationResult result;
  for (std::size_t a = 0; a < algos; ++a) {
    AlgorithmCurves curves;
    curves.label = config.algorithms[a].label;
    curves.completed_runs = completed[a];
    curves.diverged_runs = diverged[a];
    const double runs = completed[a] > 0 ? static_cast<double>(completed[a])
                                         : std::numeric_limits<double>::quiet_NaN();
    curves.iterations.resize(points);
    curves.mean_wep.resize(points);
    curves.mean_ea_sq.resize(points);
    for (std::size_t p = 0; p < points; ++p) {
      curves.iterations[p] = p * config.decimation;
      curves.mean_wep[p] = wep_sum[a][p].value() / runs;
      curves.mean_ea_sq[p] = ea_sum[a][p].value() / runs;
    }
    curves.steady_state_emse = ss_emse[a].value() / runs;
    curves.steady_state_wep = ss_wep[a].value() / runs;
    result.algorithms.push_back(std::move(curves));
  }
  return result;
}

IdentificationResult compare_algorithms(const ExperimentConfig& config) {
  if (config.algorithms.empty()) throw UsageError("comparison needs at least one algorithm");
  return run_identification(config);
}

namespace {

const NamedAlgorithm& correntropy_algorithm(const ExperimentConfig& config) {
  for (const auto& a : config.algorithms) {
    if (a.config.algorithm == Algorithm::MACC || a.config.algorithm == Algorithm::MCC) return a;
  }
  throw UsageError("EMSE theory needs a MACC or MCC algorithm in the config");
}

std::optional<double> theory_value(const ScoreMoments& moments, double mu, double trace_rx) {
  try {
    return predict_emse(moments, mu, trace_rx).S;
  } catch (const ValidityError&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<TheoryRow> theory_table(const ExperimentConfig& config,
                                    std::span<const double> mu_grid) {
  config.validate();
  const auto& base = correntropy_algorithm(config);
  const ScoreMoments moments =
      score_moments(correntropy_bandwidths(base.config), config.noise, config.theory_abs_tol);
  std::vector<TheoryRow> rows;
  for (double mu : mu_grid) {
    rows.push_back({mu, moments, theory_value(moments, mu, config.input_trace())});
  }
  return rows;
}

std::vector<SweepRow> emse_sweep(const ExperimentConfig& config, std::span<const double> mu_grid) {
  if (mu_grid.empty()) throw UsageError("step-size grid is empty");
  const auto theory = theory_table(config, mu_grid);
  const auto& base = correntropy_algorithm(config);

  ExperimentConfig sim = config;
  sim.algorithms.clear();
  for (double mu : mu_grid) {
    NamedAlgorithm a = base;
    a.config.step_size = mu;
    sim.algorithms.push_back(a);
  }
  const auto result = run_identification(sim);

  std::vector<SweepRow> rows;
  for (std::size_t k = 0; k < mu_grid.size(); ++k) {
    SweepRow row;
    row.mu = mu_grid[k];
    row.moments = theory[k].moments;
    row.s_theory = theory[k].s_theory;
    row.s_simulated = result.algorithms[k].steady_state_emse;
    row.diverged_runs = result.algorithms[k].diverged_runs;
    rows.push_back(row);
  }
  return rows;
}

void write_curves_csv(std::ostream& os, const IdentificationResult& result) {
  os << "algorithm,iteration,mean_wep,mean_ea_sq\n";
  for (const auto& c : result.algorithms) {
    for (std::size_t p = 0; p < c.iterations.size(); ++p) {
      os << c.label << ',' << c.iterations[p] << ',';
      write_real(os, c.mean_wep[p]);
      os << ',';
      write_real(os, c.mean_ea_sq[p]);
      os << '\n';
    }
  }
}

void write_summary_csv(std::ostream& os, const IdentificationResult& result) {
  os << "algorithm,steady_state_emse,steady_state_wep,completed_runs,diverged_runs\n";
  for (const auto& c : result.algorithms) {
    os << c.label << ',';
    write_real(os, c.steady_state_emse);
    os << ',';
    write_real(os, c.steady_state_wep);
    os << ',' << c.completed_runs << ',' << c.diverged_runs << '\n';
  }
}

void write_comparison_csv(std::ostream& os, const IdentificationResult& result) {
  os << "iteration";
  for (const auto& c : result.algorithms) os << ',' << c.label;
  os << '\n';
  if (result.algorithms.empty()) return;
  const auto& iterations = result.algorithms.front().iterations;
  for (std::size_t p = 0; p < iterations.size(); ++p) {
    os << iterations[p];
    for (const auto& c : result.algorithms) {
      os << ',';
      write_real(os, c.mean_wep[p]);
    }
    os << '\n';
  }
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
  os << "mu,S_theory,S_simulated,e_psi_sq,e_psi_prime,e_combo\n";
  for (const auto& r : rows) {
    write_real(os, r.mu);
    os << ',';
    if (r.s_theory) write_real(os, *r.s_theory);
    os << ',';
    write_real(os, r.s_simulated);
    for (double m : {r.moments.e_psi_sq, r.moments.e_psi_prime, r.moments.e_combo}) {
      os << ',';
      write_real(os, m);
    }
    os << '\n';
  }
}

void write_theory_csv(std::ostream& os, std::span<const TheoryRow> rows) {
  os << "mu,S_theory,e_psi_sq,e_psi_prime,e_combo\n";
  for (const auto& r : rows) {
    write_real(os, r.mu);
    os << ',';
    if (r.s_theory) write_real(os, *r.s_theory);
    for (double m : {r.moments.e_psi_sq, r.moments.e_psi_prime, r.moments.e_combo}) {
      os << ',';
      write_real(os, m);
    }
    os << '\n';
  }
}

}  // namespace acorr
